#include <doctest.h>

#include <cmath>
#include <vector>

#include "fedmimo/rng.hpp"
#include "fedmimo/surrogate.hpp"

using namespace fedmimo;

namespace {

// Finite-difference gradient of a scalar function over a point.
template <typename F>
std::vector<double> fd_gradient(F&& f, std::vector<double> x, double h = 1e-6) {
    std::vector<double> g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double step = h * std::max(1.0, std::abs(x[i]));
        x[i] += step;
        const double fp = f(x);
        x[i] -= 2 * step;
        const double fm = f(x);
        x[i] += step;
        g[i] = (fp - fm) / (2 * step);
    }
    return g;
}

LinearRatioTerm identity_term(double x_n, double y_n, double prelog = 1.0) {
    LinearRatioTerm t;
    t.x.add(0, 1.0);
    t.y.add(1, 1.0);
    t.x_n = x_n;
    t.y_n = y_n;
    t.prelog = prelog;
    return t;
}

}  // namespace

TEST_CASE("expression machinery: value, gradient and hessian agree with finite differences") {
    // One expression with all four term families.
    ConvexExpr e(AffineExpr(0.7));
    e.affine.add(0, 2.0).add(1, -1.5);
    e.add_reciprocal(3.0, AffineExpr(0.5).add(0, 1.0));
    AffineExpr sq(0.2);
    sq.add(0, 1.0).add(1, 1.0);
    e.add_square(0.8, sq);
    AffineExpr num(0.1);
    num.add(1, 2.0);
    AffineExpr den(1.0);
    den.add(0, 0.5).add(1, 0.25);
    e.add_quad_over_lin(1.7, num, den);

    const std::vector<double> x = {0.8, 1.3};
    auto f = [&](const std::vector<double>& p) { return *e.value(p); };

    Eigen::VectorXd grad = Eigen::VectorXd::Zero(2);
    e.add_gradient(x, 1.0, grad);
    const auto fg = fd_gradient(f, x);
    CHECK(grad[0] == doctest::Approx(fg[0]).epsilon(1e-6));
    CHECK(grad[1] == doctest::Approx(fg[1]).epsilon(1e-6));

    Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(2, 2);
    e.add_hessian(x, 1.0, hess);
    const double h = 1e-4;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            std::vector<double> p = x;
            p[i] += h;
            p[j] += h;
            const double fpp = f(p);
            p[j] -= 2 * h;
            const double fpm = f(p);
            p[i] -= 2 * h;
            const double fmm = f(p);
            p[j] += 2 * h;
            const double fmp = f(p);
            const double fd = (fpp - fpm - fmp + fmm) / (4 * h * h);
            CHECK(hess(i, j) == doctest::Approx(fd).epsilon(5e-3));
        }

    // Domain guard: denominator crossing zero.
    CHECK_FALSE(e.value({-0.51, 0.0}).has_value());
}

TEST_CASE("log lower bound: tightness and hand values") {
    // At the expansion point the bound equals log(1 + x_n/y_n).
    for (auto [xn, yn] : {std::pair{1.0, 1.0}, {3.0, 0.5}, {0.2, 4.0}}) {
        CHECK(log_lower_bound_value(xn, yn, xn, yn) ==
              doctest::Approx(std::log1p(xn / yn)).epsilon(1e-10));
    }
    // x_n = y_n = 1 at (2,1): log2 + 1 - 1/4 - 1/2.
    CHECK(log_lower_bound_value(2.0, 1.0, 1.0, 1.0) ==
          doctest::Approx(std::log(2.0) + 0.25).epsilon(1e-12));
}

TEST_CASE("log upper bound: tightness and hand values") {
    for (auto [xn, yn] : {std::pair{1.0, 1.0}, {3.0, 0.5}, {0.2, 4.0}}) {
        CHECK(log_upper_bound_value(xn, yn, xn, yn) ==
              doctest::Approx(std::log1p(xn / yn)).epsilon(1e-10));
    }
    // x_n = y_n = 1 at (1,2): log2 + (1/2)*((1+1)/(2*2) - 1) = log2 - 1/4.
    CHECK(log_upper_bound_value(1.0, 2.0, 1.0, 1.0) ==
          doctest::Approx(std::log(2.0) - 0.25).epsilon(1e-12));
}

TEST_CASE("bilinear bound: tightness and special cases") {
    CHECK(bilinear_upper_bound_value(3.0, 2.0, 3.0, 2.0) == doctest::Approx(6.0).epsilon(1e-15));
    // u_n = v_n: the affine part vanishes, leaving the AM-GM majorant.
    for (double u : {0.3, 1.7, 4.0})
        for (double v : {0.1, 2.2}) {
            CHECK(bilinear_upper_bound_value(u, v, 1.3, 1.3) ==
                  doctest::Approx(0.25 * (u + v) * (u + v)).epsilon(1e-14));
        }
}

TEST_CASE("domination sweeps: bounds sit on the correct side everywhere") {
    Rng rng(2024);
    int lower_ok = 0, upper_ok = 0, bilinear_ok = 0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        const double x = rng.uniform(1e-6, 10.0);
        const double y = rng.uniform(1e-6, 10.0);
        const double xn = rng.uniform(1e-6, 10.0);
        const double yn = rng.uniform(1e-6, 10.0);
        const double truth = std::log1p(x / y);
        if (log_lower_bound_value(x, y, xn, yn) <= truth + 1e-12) ++lower_ok;
        if (log_upper_bound_value(x, y, xn, yn) >= truth - 1e-12) ++upper_ok;
        if (bilinear_upper_bound_value(x, y, xn, yn) >= x * y - 1e-12) ++bilinear_ok;
    }
    CHECK(lower_ok == n);
    CHECK(upper_ok == n);
    CHECK(bilinear_ok == n);
}

TEST_CASE("expression forms of the bounds match the scalar forms and their gradients") {
    Rng rng(5150);
    for (int trial = 0; trial < 50; ++trial) {
        const double xn = rng.uniform(0.1, 8.0);
        const double yn = rng.uniform(0.1, 8.0);
        const double prelog = rng.uniform(0.5, 3.0);
        const LinearRatioTerm term = identity_term(xn, yn, prelog);

        const ConcaveExpr lower = log_lower_bound(term);
        const ConvexExpr upper = log_upper_bound(term);

        const std::vector<double> pt = {rng.uniform(0.2, 9.0), rng.uniform(0.2, 9.0)};
        CHECK(*lower.value(pt) ==
              doctest::Approx(prelog * log_lower_bound_value(pt[0], pt[1], xn, yn))
                  .epsilon(1e-11));
        CHECK(*upper.value(pt) ==
              doctest::Approx(prelog * log_upper_bound_value(pt[0], pt[1], xn, yn))
                  .epsilon(1e-11));

        // Tight at the expansion point with matching gradients (first-order
        // condition all successive approximations need).
        const std::vector<double> at = {xn, yn};
        const double truth = prelog * std::log1p(xn / yn);
        CHECK(*lower.value(at) == doctest::Approx(truth).epsilon(1e-10));
        CHECK(*upper.value(at) == doctest::Approx(truth).epsilon(1e-10));

        auto truth_fn = [&](const std::vector<double>& p) {
            return prelog * std::log1p(p[0] / p[1]);
        };
        const auto tg = fd_gradient(truth_fn, at);
        Eigen::VectorXd lg = Eigen::VectorXd::Zero(2);
        lower.negated.add_gradient(at, -1.0, lg);  // gradient of the (concave) bound
        Eigen::VectorXd ug = Eigen::VectorXd::Zero(2);
        upper.add_gradient(at, 1.0, ug);
        for (int i = 0; i < 2; ++i) {
            CHECK(lg[i] == doctest::Approx(tg[i]).epsilon(1e-5));
            CHECK(ug[i] == doctest::Approx(tg[i]).epsilon(1e-5));
        }
    }
}

TEST_CASE("bilinear expression: tightness, gradient match and convexity direction") {
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const double un = rng.uniform(0.05, 5.0);
        const double vn = rng.uniform(0.05, 5.0);
        const ConvexExpr b = bilinear_upper_bound(0, 1, un, vn);

        CHECK(*b.value(std::vector<double>{un, vn}) == doctest::Approx(un * vn).epsilon(1e-12));

        auto truth_fn = [&](const std::vector<double>& p) { return p[0] * p[1]; };
        const std::vector<double> at = {un, vn};
        const auto tg = fd_gradient(truth_fn, at);
        Eigen::VectorXd bg = Eigen::VectorXd::Zero(2);
        b.add_gradient(at, 1.0, bg);
        CHECK(bg[0] == doctest::Approx(tg[0]).epsilon(1e-5));
        CHECK(bg[1] == doctest::Approx(tg[1]).epsilon(1e-5));
    }
}

TEST_CASE("midpoint convexity spot checks") {
    Rng rng(404);
    const LinearRatioTerm term = identity_term(1.7, 2.3, 1.1);
    const ConvexExpr upper = log_upper_bound(term);
    const ConcaveExpr lower = log_lower_bound(term);
    const ConvexExpr bilin = bilinear_upper_bound(0, 1, 0.9, 1.4);
    for (int i = 0; i < 200; ++i) {
        const std::vector<double> a = {rng.uniform(0.1, 6.0), rng.uniform(0.1, 6.0)};
        const std::vector<double> b = {rng.uniform(0.1, 6.0), rng.uniform(0.1, 6.0)};
        const std::vector<double> mid = {(a[0] + b[0]) / 2, (a[1] + b[1]) / 2};
        CHECK(*upper.value(mid) <= 0.5 * (*upper.value(a) + *upper.value(b)) + 1e-10);
        CHECK(*bilin.value(mid) <= 0.5 * (*bilin.value(a) + *bilin.value(b)) + 1e-10);
        // Concave bound: midpoint value above the chord.
        CHECK(*lower.value(mid) >= 0.5 * (*lower.value(a) + *lower.value(b)) - 1e-10);
    }
}

TEST_CASE("expansion point must be strictly interior") {
    CHECK_THROWS_AS(log_lower_bound(identity_term(0.0, 1.0)), std::invalid_argument);
    CHECK_THROWS_AS(log_upper_bound(identity_term(1.0, 0.0)), std::invalid_argument);
}

TEST_CASE("build_terms reproduces hand-computed expansion constants (L=K=1)") {
    SystemConfig cfg = default_config();
    cfg.m = 12;
    cfg.l = 1;
    cfg.k = 1;
    cfg.finalize();

    ChannelState ch;
    ch.beta_fl = {2e-13};
    ch.beta_nfl = {1e-13};
    ch.sigma2_d = ch.sigma2_u = {mmse_variance(cfg.rho_p, cfg.tau_dp, 2e-13)};
    ch.sigma2_1 = ch.sigma2_2 = ch.sigma2_3 = {mmse_variance(cfg.rho_p, cfg.tau_1p, 1e-13)};

    Allocation a = Allocation::zeros(1, 1);
    a.eta_d[0] = 0.3;
    a.zeta_1[0] = 0.4;
    a.zeta_2[0] = 0.5;
    a.eta_u[0] = 0.6;
    a.zeta_3[0] = 0.7;
    a.f = 2e9;

    const VarLayout lay{1, 1};
    const SurrogateTerms terms = build_terms(a, ch, cfg, lay, 1.0);

    CHECK(terms.s1_fl[0].x_n == doctest::Approx(5.316362051712).epsilon(1e-9));
    CHECK(terms.s1_fl[0].y_n == doctest::Approx(1.978365990713).epsilon(1e-9));
    CHECK(terms.s1_nfl[0].x_n == doctest::Approx(2.459683828351).epsilon(1e-9));
    CHECK(terms.s1_nfl[0].y_n == doctest::Approx(1.678980564761).epsilon(1e-9));
    CHECK(terms.s2[0].x_n == doctest::Approx(3.382065263983).epsilon(1e-9));
    CHECK(terms.s2[0].y_n == doctest::Approx(1.484986117687).epsilon(1e-9));
    CHECK(terms.s3_ul[0].x_n == doctest::Approx(0.2339199302753).epsilon(1e-9));
    CHECK(terms.s3_ul[0].y_n == doctest::Approx(1.016771988412).epsilon(1e-9));
    CHECK(terms.s3_dl[0].x_n == doctest::Approx(4.734891369576).epsilon(1e-9));
    CHECK(terms.s3_dl[0].y_n == doctest::Approx(1.678980564761).epsilon(1e-9));

    // The affine forms evaluate to the expansion constants at the expansion
    // allocation, and rebuilding is idempotent.
    const VarLayout l2 = lay;
    std::vector<double> x(l2.size(), 0.0);
    x[l2.eta_d(0)] = 0.3;
    x[l2.zeta_1(0)] = 0.4;
    x[l2.zeta_2(0)] = 0.5;
    x[l2.eta_u(0)] = 0.6;
    x[l2.zeta_3(0)] = 0.7;
    CHECK(terms.s1_fl[0].x.value(x) == doctest::Approx(terms.s1_fl[0].x_n).epsilon(1e-12));
    CHECK(terms.s1_fl[0].y.value(x) == doctest::Approx(terms.s1_fl[0].y_n).epsilon(1e-12));
    CHECK(terms.s3_dl[0].x.value(x) == doctest::Approx(terms.s3_dl[0].x_n).epsilon(1e-12));

    const SurrogateTerms again = build_terms(a, ch, cfg, lay, 1.0);
    CHECK(again.s2[0].x_n == terms.s2[0].x_n);
    CHECK(again.s2[0].y_n == terms.s2[0].y_n);

    // Positive expansion constants for any strictly positive allocation.
    CHECK(terms.s1_fl[0].x_n > 0);
    CHECK(terms.s3_ul[0].y_n > 0);

    // Zero power is not a valid expansion point.
    Allocation zeroed = a;
    zeroed.zeta_2[0] = 0.0;
    CHECK_THROWS_AS(build_terms(zeroed, ch, cfg, lay, 1.0), std::invalid_argument);
}
