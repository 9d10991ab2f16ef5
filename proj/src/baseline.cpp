#include "fedmimo/baseline.hpp"

#include <algorithm>
#include <cmath>

namespace fedmimo {

BaselineResult bl_allocation(const ChannelState& ch, const SystemConfig& cfg) {
    BaselineResult out;
    const int L = cfg.l, K = cfg.k;

    Allocation a = Allocation::zeros(L, K);
    std::fill(a.eta_d.begin(), a.eta_d.end(), 1.0 / (L + K));
    std::fill(a.zeta_1.begin(), a.zeta_1.end(), 1.0 / (L + K));
    std::fill(a.zeta_2.begin(), a.zeta_2.end(), 1.0 / K);
    std::fill(a.zeta_3.begin(), a.zeta_3.end(), 1.0 / K);
    std::fill(a.eta_u.begin(), a.eta_u.end(), 1.0);
    a.f = cfg.f_max;  // placeholder so transmit phases are evaluable

    const PhaseTimes t = phase_times(a, ch, cfg);
    if (!std::isfinite(t.t_d) || !std::isfinite(t.t_u)) return out;

    // The compute phase fills the remaining QoS budget exactly.
    const double rest = cfg.t_qos_s - t.t_d - t.t_u;
    if (rest <= 0.0) return out;

    const double f = cfg.compute_cycles() / rest;
    if (f > cfg.f_max || f < cfg.f_min) return out;

    a.f = f;
    out.allocation = std::move(a);
    out.feasible = true;
    return out;
}

}  // namespace fedmimo
