#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "fedmimo/config.hpp"

namespace fedmimo {

/// Large-scale channel state for one draw: per-UE fading coefficients and
/// the MMSE channel-estimate variances for each phase of the round.
/// Immutable after sample_layout(); safe to share across workers.
struct ChannelState {
    std::vector<double> beta_fl;   ///< FL UE large-scale gains (linear)
    std::vector<double> beta_nfl;  ///< non-FL UE large-scale gains (linear)

    std::vector<double> sigma2_d;  ///< FL estimate variance, S1 downlink
    std::vector<double> sigma2_u;  ///< FL estimate variance, S3 uplink
    std::vector<double> sigma2_1;  ///< non-FL estimate variance, S1
    std::vector<double> sigma2_2;  ///< non-FL estimate variance, S2
    std::vector<double> sigma2_3;  ///< non-FL estimate variance, S3

    /// UE coordinates relative to the BS (m), FL group first.
    std::vector<std::array<double, 2>> positions;
    std::uint64_t seed = 0;
};

/// Large-scale gain at distance d (m) with shadowing z (dB):
/// 10^((-148.1 - 37.6 log10(d / 1 km) + z) / 10).
/// Throws std::domain_error when d < d_min, where the model is not valid.
double pathloss_beta(double distance_m, double shadow_db, double d_min_m = 35.0);

/// MMSE estimate variance rho_p*tau*beta^2 / (rho_p*tau*beta + 1).
/// Always in [0, beta); throws std::domain_error on negative input.
double mmse_variance(double rho_p, double tau, double beta);

/// Draws L+K UEs uniformly over the d_side x d_side square centered on the
/// BS, rejection-resampling any position closer than d_min. Shadowing is
/// i.i.d. N(0, shadow_sigma_db^2) in dB. Deterministic in (cfg, seed).
ChannelState sample_layout(const SystemConfig& cfg, std::uint64_t seed);

}  // namespace fedmimo
