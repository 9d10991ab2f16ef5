#pragma once

#include <string>
#include <vector>

#include "fedmimo/channel.hpp"
#include "fedmimo/config.hpp"

namespace fedmimo {

/// Decision variables of the allocation problem: per-UE power control
/// coefficients for each phase plus the shared frequency control
/// coefficient f. All coefficients are normalized (dimensionless).
struct Allocation {
    std::vector<double> eta_d;   ///< S1 downlink, FL UEs (length L)
    std::vector<double> zeta_1;  ///< S1 downlink, non-FL UEs (length K)
    std::vector<double> zeta_2;  ///< S2 downlink, non-FL UEs (length K)
    std::vector<double> eta_u;   ///< S3 uplink, FL UEs (length L)
    std::vector<double> zeta_3;  ///< S3 downlink, non-FL UEs (length K)
    double f = 0.0;              ///< computing frequency (cycles/s)

    static Allocation zeros(int l, int k);
};

/// SINR split into numerator and denominator; the surrogate constructors
/// need the two affine pieces separately, not just the ratio.
struct SinrParts {
    double numerator = 0.0;
    double denominator = 1.0;
    double value() const { return numerator / denominator; }
};

SinrParts sinr_s1_fl(const Allocation& a, const ChannelState& ch, const SystemConfig& cfg, int l);
SinrParts sinr_s1_nfl(const Allocation& a, const ChannelState& ch, const SystemConfig& cfg, int k);
SinrParts sinr_s2(const Allocation& a, const ChannelState& ch, const SystemConfig& cfg, int k);
SinrParts sinr_s3_ul(const Allocation& a, const ChannelState& ch, const SystemConfig& cfg, int l);
SinrParts sinr_s3_dl(const Allocation& a, const ChannelState& ch, const SystemConfig& cfg, int k);

/// Achievable rate (bit/s) from an SINR: ((tau_c - tau_pilot)/tau_c) * B *
/// log2(1 + gamma), with B/2 whenever the transmission uses half the band.
double rate_from_sinr(double gamma, int tau_pilot, const SystemConfig& cfg, bool half_band);

/// Durations of the three phases: t_d = S_d / R_d, t_c = N_c*D_bar*c_bar / f,
/// t_u = S_u / R_u. A zero group rate or zero frequency yields +inf for the
/// affected phase (the allocation cannot finish a round).
struct PhaseTimes {
    double t_d = 0.0;
    double t_c = 0.0;
    double t_u = 0.0;
    double total() const { return t_d + t_c + t_u; }
    bool finite() const;
};

PhaseTimes phase_times(const Allocation& a, const ChannelState& ch, const SystemConfig& cfg);

/// Everything the objective needs for a fixed allocation: per-UE rates,
/// group minima, phase delays, received-data volumes, and the min effective
/// rate over non-FL UEs.
struct RateReport {
    std::vector<double> r_d_fl;  ///< S1 FL rates (bit/s)
    double r_d_group = 0.0;      ///< min over r_d_fl
    std::vector<double> r_1;     ///< S1 non-FL rates
    std::vector<double> r_2;     ///< S2 non-FL rates
    std::vector<double> r_u_fl;  ///< S3 FL uplink rates
    double r_u_group = 0.0;      ///< min over r_u_fl
    std::vector<double> r_3;     ///< S3 non-FL rates

    double t_d = 0.0, t_c = 0.0, t_u = 0.0;  ///< phase delays (s)

    std::vector<double> d_1, d_2, d_3;  ///< per-UE data volumes (bits)
    std::vector<double> eff_rate;       ///< per-UE effective rates (bit/s)
    double min_eff_rate = 0.0;          ///< objective (bit/s)

    double round_time() const { return t_d + t_c + t_u; }
};

/// Evaluates all rates, delays and the min effective rate. When a group
/// rate is zero the delays are infinite and the effective rates are
/// reported as zero (the round never completes).
RateReport evaluate(const Allocation& a, const ChannelState& ch, const SystemConfig& cfg);

/// One violated constraint of the allocation problem.
struct Violation {
    std::string constraint;  ///< stable identifier, e.g. "s1_power_budget"
    double residual = 0.0;   ///< amount by which the constraint is exceeded
};

/// Checks the power budgets, per-UE uplink caps, nonnegativity, the
/// frequency range and the QoS round time. Empty result means feasible.
/// `tol` absorbs floating-point residue on boundary allocations.
std::vector<Violation> check_feasibility(const Allocation& a, const ChannelState& ch,
                                         const SystemConfig& cfg, double tol = 1e-12);

/// CSV header/row for a RateReport (flat layout, documented in the README).
std::string rate_report_csv_header(int l, int k);
std::string rate_report_csv_row(const RateReport& r);

}  // namespace fedmimo
