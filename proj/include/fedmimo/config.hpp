#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fedmimo {

/// All scenario constants for one downlink/uplink scheduling instance.
///
/// Powers come in two forms: the raw transmit powers in watts as configured,
/// and the normalized powers rho_* (raw power divided by the total noise
/// power implied by noise_dbm). The normalized values are derived, never
/// read from a config file; call finalize() after mutating raw powers.
struct SystemConfig {
    int m = 100;  ///< BS antenna count
    int l = 5;    ///< FL user count
    int k = 5;    ///< non-FL user count

    double bandwidth_hz = 20e6;
    int tau_c = 200;    ///< coherence interval (symbols)
    int tau_dp = 20;    ///< pilot length, S1 FL downlink estimation
    int tau_1p = 20;    ///< pilot length, S1 non-FL
    int tau_2p = 20;    ///< pilot length, S2 non-FL
    int tau_up = 20;    ///< pilot length, S3 FL uplink
    int tau_3p = 20;    ///< pilot length, S3 non-FL

    double p_d_watt = 10.0;   ///< BS downlink power
    double p_u_watt = 0.2;    ///< FL UE uplink power
    double p_p_watt = 0.2;    ///< pilot power
    double noise_dbm = -92.0; ///< total noise power over the band

    // Derived normalized powers (power / noise power); set by finalize().
    double rho_d = 0.0;
    double rho_u = 0.0;
    double rho_p = 0.0;

    double s_d_bits = 16e6; ///< global update size
    double s_u_bits = 16e6; ///< local update size
    int n_c = 20;           ///< local computing rounds
    double d_bar_samples = 1.6e5; ///< max local dataset size
    double c_bar_cycles = 20.0;   ///< max cycles per sample
    double f_min = 0.0;     ///< computing frequency lower bound (cycles/s)
    double f_max = 5e9;     ///< computing frequency upper bound (cycles/s)
    double t_qos_s = 3.0;   ///< round-time QoS threshold

    double d_side_m = 250.0;     ///< square side length, BS at the center
    double d_min_m = 35.0;       ///< minimum BS-UE distance
    double shadow_sigma_db = 7.0;

    // Optional per-UE dataset sizes / cycle counts (length l when present).
    // Kept for generality; the scheduler only uses the maxima d_bar/c_bar,
    // which synchronize all FL UEs to the same compute time.
    std::vector<double> d_samples;
    std::vector<double> c_cycles;

    /// Noise power in watts implied by noise_dbm.
    double noise_watt() const;

    /// Total compute load per FL round, n_c * d_bar * c_bar (cycles).
    double compute_cycles() const { return n_c * d_bar_samples * c_bar_cycles; }

    /// Recompute the normalized powers from the raw powers and noise.
    void finalize();
};

/// Default scenario: M=100, L=K=5, 20 MHz, 3 s QoS, 250 m square.
SystemConfig default_config();

/// Validates every invariant; returns one message per violation, each
/// naming the offending key. Empty means valid.
std::vector<std::string> validate(const SystemConfig& cfg);

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Parses a key=value config file ('#' comments, blank lines ignored).
/// Unknown keys and invariant violations are all collected and reported
/// together in the ConfigError message, one line per problem.
SystemConfig load_config(const std::string& path);

/// Same as load_config but from an already-read string (used by tests).
SystemConfig parse_config(const std::string& text);

/// Writes the full key=value form of cfg (round-trips through parse_config).
std::string format_config(const SystemConfig& cfg);

}  // namespace fedmimo
