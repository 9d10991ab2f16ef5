#include <doctest.h>

#include <cmath>

#include "fedmimo/channel.hpp"
#include "fedmimo/oracle.hpp"

using namespace fedmimo;

namespace {

SystemConfig tiny_cfg() {
    SystemConfig cfg = default_config();
    cfg.l = 1;
    cfg.k = 1;
    cfg.m = 20;
    cfg.finalize();
    return cfg;
}

}  // namespace

TEST_CASE("dimensionality guard") {
    SystemConfig cfg = default_config();  // L = K = 5
    const ChannelState ch = sample_layout(cfg, 1);
    CHECK_THROWS_AS(grid_search(ch, cfg), std::invalid_argument);
}

TEST_CASE("all-infeasible grid reports infeasible") {
    SystemConfig cfg = tiny_cfg();
    cfg.t_qos_s = 0.005;  // below the compute floor at f_max
    const ChannelState ch = sample_layout(cfg, 2);
    const OracleResult r = grid_search(ch, cfg);
    CHECK_FALSE(r.feasible);
}

TEST_CASE("returned objective is exactly the evaluation of the returned point") {
    SystemConfig cfg = tiny_cfg();
    const ChannelState ch = sample_layout(cfg, 5);
    GridSpec grid;
    grid.steps = 9;
    grid.rounds = 2;
    const OracleResult r = grid_search(ch, cfg, grid);
    REQUIRE(r.feasible);
    CHECK(r.objective == evaluate(r.allocation, ch, cfg).min_eff_rate);
    CHECK(check_feasibility(r.allocation, ch, cfg).empty());
    CHECK(r.evaluated > 0);
}

TEST_CASE("refinement: monotone incumbent, stable between rounds 2 and 3") {
    SystemConfig cfg = tiny_cfg();
    const ChannelState ch = sample_layout(cfg, 7);
    GridSpec g1{15, 1}, g2{15, 2}, g3{15, 3};
    const double v1 = grid_search(ch, cfg, g1).objective;
    const double v2 = grid_search(ch, cfg, g2).objective;
    const double v3 = grid_search(ch, cfg, g3).objective;
    CHECK(v2 >= v1 * (1.0 - 1e-12));
    CHECK(v3 >= v2 * (1.0 - 1e-12));
    CHECK(std::abs(v3 - v2) / v2 < 0.01);
}

TEST_CASE("deterministic across repeated runs") {
    SystemConfig cfg = tiny_cfg();
    const ChannelState ch = sample_layout(cfg, 11);
    GridSpec grid{11, 2};
    const OracleResult a = grid_search(ch, cfg, grid);
    const OracleResult b = grid_search(ch, cfg, grid);
    CHECK(a.objective == b.objective);
    CHECK(a.allocation.f == b.allocation.f);
    CHECK(a.allocation.eta_d[0] == b.allocation.eta_d[0]);
    CHECK(a.evaluated == b.evaluated);
}

TEST_CASE("symmetric channel: the two UEs see the same gain and the result reflects it") {
    // With identical FL and non-FL channels the search space treats the
    // single member of each group symmetrically; the sanity check here is
    // that the returned point is feasible, reproducible, and no worse than
    // the trivially symmetric equal-power candidate on its own grid.
    SystemConfig cfg = tiny_cfg();
    ChannelState ch = sample_layout(cfg, 13);
    ch.beta_nfl[0] = ch.beta_fl[0];
    ch.sigma2_1[0] = ch.sigma2_d[0];
    ch.sigma2_2[0] = ch.sigma2_d[0];
    ch.sigma2_3[0] = ch.sigma2_d[0];

    const OracleResult r = grid_search(ch, cfg, GridSpec{11, 3});
    REQUIRE(r.feasible);

    // The refined optimum cannot sit materially below this feasible point.
    Allocation equal = Allocation::zeros(1, 1);
    equal.eta_d[0] = equal.zeta_1[0] = 0.5;
    equal.zeta_2[0] = equal.zeta_3[0] = 1.0;
    equal.eta_u[0] = 1.0;
    equal.f = cfg.f_max;
    if (check_feasibility(equal, ch, cfg).empty())
        CHECK(r.objective >= evaluate(equal, ch, cfg).min_eff_rate * 0.97);
}
