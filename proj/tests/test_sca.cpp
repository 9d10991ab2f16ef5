#include <doctest.h>

#include <cmath>

#include "fedmimo/baseline.hpp"
#include "fedmimo/channel.hpp"
#include "fedmimo/sca.hpp"
#include "test_util.hpp"

using namespace fedmimo;

namespace {

SystemConfig small_cfg() {
    SystemConfig cfg = default_config();
    cfg.l = 2;
    cfg.k = 2;
    cfg.m = 30;
    cfg.finalize();
    return cfg;
}

}  // namespace

TEST_CASE("initialize: generous QoS yields a strictly feasible state") {
    SystemConfig cfg = small_cfg();
    cfg.t_qos_s = 100.0;
    const ChannelState ch = sample_layout(cfg, 4);
    const InitResult init = initialize(ch, cfg);
    REQUIRE(init.feasible);
    CHECK(check_feasibility(init.state.allocation, ch, cfg).empty());
    // Strictness: the subproblem accepts the state as a barrier start.
    const VarLayout lay{cfg.l, cfg.k};
    CHECK_NOTHROW(solve(build_subproblem(init.state, ch, cfg, lay),
                        scale_state(init.state, lay)));
}

TEST_CASE("initialize: QoS below the compute floor is infeasible") {
    SystemConfig cfg = small_cfg();
    cfg.t_qos_s = 0.0127;  // compute alone needs N_c*D_bar*c_bar/f_max = 12.8 ms
    const ChannelState ch = sample_layout(cfg, 4);
    CHECK_FALSE(initialize(ch, cfg).feasible);
}

TEST_CASE("initialize: feasible with probability about one at section-default scale") {
    SystemConfig cfg = default_config();  // M=100, L=K=5, D=250
    int feasible = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed)
        if (initialize(sample_layout(cfg, seed), cfg).feasible) ++feasible;
    CHECK(feasible >= 90);
}

TEST_CASE("iterate: ascent and feasibility preserved") {
    SystemConfig cfg = small_cfg();
    const ChannelState ch = sample_layout(cfg, 15);
    const InitResult init = initialize(ch, cfg);
    REQUIRE(init.feasible);

    ScaState s = init.state;
    double z_prev = s.z;
    for (int i = 0; i < 8; ++i) {
        const IterateResult res = iterate(s, ch, cfg);
        REQUIRE(res.solver_ok);
        CHECK(res.subproblem_z >= z_prev * (1.0 - 1e-8));
        s = res.state;
        CHECK(check_feasibility(s.allocation, ch, cfg).empty());
        z_prev = res.subproblem_z;
    }
    // First step from the equal-power start strictly improves.
    const IterateResult first = iterate(init.state, ch, cfg);
    CHECK(first.subproblem_z > init.state.z);
}

TEST_CASE("a converged run is a fixed point of iterate") {
    SystemConfig cfg = small_cfg();
    const ChannelState ch = sample_layout(cfg, 22);
    ScaOptions opts;
    opts.rel_tol = 1e-7;  // drive close to stationarity
    const SolveReport rep = run(ch, cfg, opts);
    REQUIRE(rep.status == ScaStatus::converged);

    // Rebuild the state at the final allocation and take one more step.
    const InitResult init = initialize(ch, cfg);
    REQUIRE(init.feasible);
    ScaState s = init.state;
    for (int i = 0; i < rep.iterations; ++i) {
        const IterateResult res = iterate(s, ch, cfg);
        REQUIRE(res.solver_ok);
        s = res.state;
    }
    const IterateResult more = iterate(s, ch, cfg);
    REQUIRE(more.solver_ok);
    CHECK(std::abs(more.subproblem_z - s.z) / s.z < 1e-5);
}

TEST_CASE("run: deterministic, monotone trace, exact objective at least z") {
    SystemConfig cfg = small_cfg();
    const ChannelState ch = sample_layout(cfg, 33);
    const SolveReport a = run(ch, cfg);
    const SolveReport b = run(ch, cfg);

    REQUIRE(a.z_trace.size() == b.z_trace.size());
    for (std::size_t i = 0; i < a.z_trace.size(); ++i) CHECK(a.z_trace[i] == b.z_trace[i]);
    CHECK(a.min_eff_rate == b.min_eff_rate);
    CHECK(a.iterations == b.iterations);
    CHECK(solve_report_csv_row(a) == solve_report_csv_row(b));

    for (std::size_t i = 1; i < a.z_trace.size(); ++i)
        CHECK(a.z_trace[i] >= a.z_trace[i - 1] * (1.0 - 1e-8));
    CHECK(a.min_eff_rate >= a.z_trace.back() * (1.0 - 1e-6));
}

TEST_CASE("run beats the baseline it starts from") {
    SystemConfig cfg = small_cfg();
    for (std::uint64_t seed = 40; seed < 44; ++seed) {
        const ChannelState ch = sample_layout(cfg, seed);
        const BaselineResult bl = bl_allocation(ch, cfg);
        if (!bl.feasible) continue;
        const SolveReport rep = run(ch, cfg);
        REQUIRE(rep.status == ScaStatus::converged);
        const double bl_rate = evaluate(bl.allocation, ch, cfg).min_eff_rate;
        CHECK(rep.min_eff_rate >= bl_rate * (1.0 - 1e-9));
    }
}

TEST_CASE("infeasible instance propagates from initialize") {
    SystemConfig cfg = small_cfg();
    cfg.t_qos_s = 0.012;
    const ChannelState ch = sample_layout(cfg, 3);
    const SolveReport rep = run(ch, cfg);
    CHECK(rep.status == ScaStatus::infeasible_instance);
    CHECK(rep.z_trace.empty());
}

TEST_CASE("epigraph ratio with tight auxiliaries equals the exact objective") {
    SystemConfig cfg = small_cfg();
    cfg.t_qos_s = 1e6;  // the identity is about the ratio algebra, not QoS
    Rng rng(606);
    int tested = 0;
    for (std::uint64_t seed = 1; tested < 100; ++seed) {
        const ChannelState ch = sample_layout(cfg, seed);
        const Allocation a = testutil::random_allocation(rng, cfg);
        if (!check_feasibility(a, ch, cfg).empty()) continue;
        ++tested;
        const double direct = evaluate(a, ch, cfg).min_eff_rate;
        const double via_epigraph = epigraph_ratio(a, ch, cfg);
        CHECK(via_epigraph == doctest::Approx(direct).epsilon(1e-9));
    }
}

TEST_CASE("scale/unscale round-trips the state") {
    SystemConfig cfg = small_cfg();
    const ChannelState ch = sample_layout(cfg, 77);
    const InitResult init = initialize(ch, cfg);
    REQUIRE(init.feasible);
    const VarLayout lay{cfg.l, cfg.k};
    const ScaState back = unscale_state(scale_state(init.state, lay), lay, 0);
    CHECK(back.z == doctest::Approx(init.state.z).epsilon(1e-14));
    CHECK(back.t == doctest::Approx(init.state.t).epsilon(1e-14));
    CHECK(back.a2 == doctest::Approx(init.state.a2).epsilon(1e-14));
    CHECK(back.allocation.f == doctest::Approx(init.state.allocation.f).epsilon(1e-14));
    for (int i = 0; i < cfg.k; ++i)
        CHECK(back.r2[i] == doctest::Approx(init.state.r2[i]).epsilon(1e-14));
}
