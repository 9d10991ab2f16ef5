#include <doctest.h>

#include <cmath>
#include <vector>

#include "fedmimo/channel.hpp"
#include "fedmimo/cvxsolve.hpp"
#include "fedmimo/rng.hpp"
#include "fedmimo/sca.hpp"

using namespace fedmimo;

namespace {

ConvexProgram degenerate_lp() {
    ConvexProgram p;
    p.var_names = {"z"};
    p.objective_var = 0;
    AffineExpr cap(-5.0);
    cap.add(0, 1.0);
    p.constraints.push_back({ConvexExpr(cap), "cap"});
    AffineExpr nn;
    nn.add(0, -1.0);
    p.constraints.push_back({ConvexExpr(nn), "nonneg"});
    return p;
}

}  // namespace

TEST_CASE("degenerate LP: maximize z subject to z <= 5") {
    const ConvexProgram p = degenerate_lp();
    const Solution s = solve(p, std::vector<double>{1.0});
    CHECK(s.status == SolveStatus::optimal);
    CHECK(s.objective == doctest::Approx(5.0).epsilon(1e-6));
    CHECK(s.max_violation <= 0.0);
}

TEST_CASE("non-interior start points are rejected") {
    const ConvexProgram p = degenerate_lp();
    CHECK_THROWS_AS(solve(p, std::vector<double>{5.0}), std::invalid_argument);
    CHECK_THROWS_AS(solve(p, std::vector<double>{7.0}), std::invalid_argument);
}

TEST_CASE("single bilinear constraint matches the analytic optimum") {
    // maximize z s.t. bilinear majorant of z*t_q (expanded at (1,1)) <= 4,
    // t_q in [1,2]. The majorant at (1,1) is (z+t_q)^2/4, so z* = 4 - t_q
    // with t_q at its lower bound: z* = 3.
    ConvexProgram p;
    p.var_names = {"z", "t_q"};
    p.objective_var = 0;
    ConvexExpr bil = bilinear_upper_bound(0, 1, 1.0, 1.0);
    bil.affine.constant -= 4.0;
    p.constraints.push_back({std::move(bil), "product_cap"});
    AffineExpr lo(1.0);
    lo.add(1, -1.0);
    p.constraints.push_back({ConvexExpr(lo), "t_q_lower"});
    AffineExpr hi(-2.0);
    hi.add(1, 1.0);
    p.constraints.push_back({ConvexExpr(hi), "t_q_upper"});
    AffineExpr nn;
    nn.add(0, -1.0);
    p.constraints.push_back({ConvexExpr(nn), "z_nonneg"});

    const Solution s = solve(p, std::vector<double>{0.5, 1.5});
    CHECK(s.status == SolveStatus::optimal);

    // Independent scalar oracle: refine max over (z, t_q) on a grid.
    double lo_z = 0.0, hi_z = 6.0, lo_t = 1.0, hi_t = 2.0, best = -1.0;
    for (int round = 0; round < 6; ++round) {
        double bz = lo_z, bt = lo_t;
        for (int i = 0; i <= 200; ++i)
            for (int j = 0; j <= 200; ++j) {
                const double z = lo_z + (hi_z - lo_z) * i / 200.0;
                const double t = lo_t + (hi_t - lo_t) * j / 200.0;
                if (0.25 * (z + t) * (z + t) <= 4.0 && z > best) {
                    best = z;
                    bz = z;
                    bt = t;
                }
            }
        const double wz = (hi_z - lo_z) / 200.0, wt = (hi_t - lo_t) / 200.0;
        lo_z = std::max(0.0, bz - wz);
        hi_z = std::min(6.0, bz + wz);
        lo_t = std::max(1.0, bt - wt);
        hi_t = std::min(2.0, bt + wt);
    }
    CHECK(best == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(s.objective == doctest::Approx(best).epsilon(1e-5));
}

TEST_CASE("full subproblem from a strictly feasible state (L=K=2)") {
    SystemConfig cfg = default_config();
    cfg.l = 2;
    cfg.k = 2;
    cfg.m = 40;
    cfg.finalize();
    const ChannelState ch = sample_layout(cfg, 6);
    const InitResult init = initialize(ch, cfg);
    REQUIRE(init.feasible);

    const VarLayout lay{cfg.l, cfg.k};
    const ConvexProgram prog = build_subproblem(init.state, ch, cfg, lay);
    const std::vector<double> start = scale_state(init.state, lay);

    const Solution sol = solve(prog, start);
    CHECK(sol.status == SolveStatus::optimal);
    CHECK(sol.max_violation <= 1e-8);
    CHECK(sol.objective >= start[lay.z()] - 1e-7);  // ascent from the start point
    CHECK(sol.kkt_residual <= 1e-4);
}

TEST_CASE("identical inputs give bit-identical solutions") {
    SystemConfig cfg = default_config();
    cfg.l = 2;
    cfg.k = 2;
    cfg.m = 30;
    cfg.finalize();
    const ChannelState ch = sample_layout(cfg, 9);
    const InitResult init = initialize(ch, cfg);
    REQUIRE(init.feasible);
    const VarLayout lay{cfg.l, cfg.k};
    const ConvexProgram prog = build_subproblem(init.state, ch, cfg, lay);
    const std::vector<double> start = scale_state(init.state, lay);

    const Solution a = solve(prog, start);
    const Solution b = solve(prog, start);
    REQUIRE(a.x.size() == b.x.size());
    for (std::size_t i = 0; i < a.x.size(); ++i) CHECK(a.x[i] == b.x[i]);
}

TEST_CASE("random small programs match a grid-refinement reference within 0.1%") {
    // maximize x0 over three x0-linear convex constraints (reciprocal,
    // square, quadratic-over-linear) plus boxes; the reference maximizes
    // min of the three closed-form x0-bounds over a refined (x1,x2) grid.
    Rng rng(777);
    int tested = 0;
    while (tested < 20) {
        const double c1 = rng.uniform(1.0, 3.0), c2 = rng.uniform(1.0, 3.0),
                     c3 = rng.uniform(1.0, 3.0);
        const double w1 = rng.uniform(0.1, 1.0), b1 = rng.uniform(0.5, 2.0),
                     a1 = rng.uniform(0.5, 2.0);
        const double q = rng.uniform(0.05, 0.3), s = rng.uniform(0.0, 2.0),
                     u = rng.uniform(0.05, 0.3);
        const double lo1 = 0.2, hi1 = 3.0, lo2 = 0.2, hi2 = 3.0;

        auto bound = [&](double x1, double x2) {
            const double ba = c1 - w1 / (a1 * x1 + b1);
            const double d = x1 + x2 - s;
            const double bb = c2 - q * d * d;
            const double bc = c3 - u * x1 * x1 / x2;
            return std::min({ba, bb, bc});
        };
        const double mid1 = 0.5 * (lo1 + hi1), mid2 = 0.5 * (lo2 + hi2);
        if (bound(mid1, mid2) < 0.2) continue;  // want a clearly feasible instance
        ++tested;

        ConvexProgram p;
        p.var_names = {"x0", "x1", "x2"};
        p.objective_var = 0;
        {
            ConvexExpr e(AffineExpr(-c1));
            e.affine.add(0, 1.0);
            AffineExpr den(b1);
            den.add(1, a1);
            e.add_reciprocal(w1, den);
            p.constraints.push_back({std::move(e), "recip"});
        }
        {
            ConvexExpr e(AffineExpr(-c2));
            e.affine.add(0, 1.0);
            AffineExpr arg(-s);
            arg.add(1, 1.0).add(2, 1.0);
            e.add_square(q, arg);
            p.constraints.push_back({std::move(e), "square"});
        }
        {
            ConvexExpr e(AffineExpr(-c3));
            e.affine.add(0, 1.0);
            AffineExpr num;
            num.add(1, 1.0);
            AffineExpr den;
            den.add(2, 1.0);
            e.add_quad_over_lin(u, num, den);
            p.constraints.push_back({std::move(e), "qol"});
        }
        auto box = [&p](int var, double lo, double hi, const char* name) {
            AffineExpr below(lo);
            below.add(var, -1.0);
            p.constraints.push_back({ConvexExpr(below), std::string(name) + "_lo"});
            AffineExpr above(-hi);
            above.add(var, 1.0);
            p.constraints.push_back({ConvexExpr(above), std::string(name) + "_hi"});
        };
        box(1, lo1, hi1, "x1");
        box(2, lo2, hi2, "x2");
        AffineExpr nn;
        nn.add(0, -1.0);
        p.constraints.push_back({ConvexExpr(nn), "x0_nonneg"});

        const std::vector<double> start = {0.5 * bound(mid1, mid2), mid1, mid2};
        const Solution sol = solve(p, start);
        REQUIRE(sol.status == SolveStatus::optimal);

        // Reference: refined grid over (x1, x2).
        double glo1 = lo1, ghi1 = hi1, glo2 = lo2, ghi2 = hi2, best = -1.0;
        const int n = 80;
        for (int round = 0; round < 5; ++round) {
            double bx1 = glo1, bx2 = glo2;
            for (int i = 0; i <= n; ++i)
                for (int j = 0; j <= n; ++j) {
                    const double x1 = glo1 + (ghi1 - glo1) * i / n;
                    const double x2 = glo2 + (ghi2 - glo2) * j / n;
                    const double v = bound(x1, x2);
                    if (v > best) {
                        best = v;
                        bx1 = x1;
                        bx2 = x2;
                    }
                }
            const double w_1 = (ghi1 - glo1) / n, w_2 = (ghi2 - glo2) / n;
            glo1 = std::max(lo1, bx1 - w_1);
            ghi1 = std::min(hi1, bx1 + w_1);
            glo2 = std::max(lo2, bx2 - w_2);
            ghi2 = std::min(hi2, bx2 + w_2);
        }
        CHECK(sol.objective == doctest::Approx(best).epsilon(1e-3));
    }
}

TEST_CASE("program dump names every constraint") {
    SystemConfig cfg = default_config();
    cfg.l = 1;
    cfg.k = 1;
    cfg.m = 16;
    cfg.finalize();
    const ChannelState ch = sample_layout(cfg, 13);
    const InitResult init = initialize(ch, cfg);
    REQUIRE(init.feasible);
    const VarLayout lay{1, 1};
    const ConvexProgram prog = build_subproblem(init.state, ch, cfg, lay);
    std::ostringstream os;
    prog.print(os);
    const std::string text = os.str();
    CHECK(text.find("s1_power_budget") != std::string::npos);
    CHECK(text.find("round_time_budget") != std::string::npos);
    CHECK(text.find("fl_dl_rate_floor[0]") != std::string::npos);
    CHECK(text.find("maximize z") != std::string::npos);
}
