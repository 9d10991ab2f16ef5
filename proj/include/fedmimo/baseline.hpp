#pragma once

#include "fedmimo/channel.hpp"
#include "fedmimo/config.hpp"
#include "fedmimo/rates.hpp"

namespace fedmimo {

/// Equal-power heuristic: eta_d = zeta_1 = 1/(L+K), zeta_2 = zeta_3 = 1/K,
/// eta_u = 1, and f chosen so the compute phase fills the QoS budget
/// exactly: f = N_c*D_bar*c_bar / (t_qos - t_d - t_u).
///
/// Infeasible (feasible=false) when t_d + t_u already exceeds t_qos or the
/// required f falls outside [f_min, f_max]; no clamping, since a clamped f
/// would silently miss the deadline the scheme is defined to meet.
struct BaselineResult {
    Allocation allocation;
    bool feasible = false;
};

BaselineResult bl_allocation(const ChannelState& ch, const SystemConfig& cfg);

}  // namespace fedmimo
