#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fedmimo/config.hpp"
#include "fedmimo/sca.hpp"

namespace fedmimo {

enum class SweepVar { antennas, fl_users, side_length };

SweepVar parse_sweep_var(const std::string& name);  // "M" | "L" | "D"
const char* to_string(SweepVar v);

struct SweepSpec {
    SweepVar variable = SweepVar::antennas;
    std::vector<double> values;
    int trials = 50;
    std::uint64_t seed_base = 1;
    int jobs = 0;  ///< worker threads; 0 = hardware concurrency
    ScaOptions sca;
};

/// One channel draw solved by both schemes. The same draw feeds both; a
/// trial is excluded from the means when either scheme is infeasible so
/// the comparison stays paired.
struct TrialResult {
    double sweep_value = 0.0;
    int trial = 0;
    std::uint64_t seed = 0;
    std::string alg1_status;
    double alg1_rate = 0.0;  ///< bit/s, 0 when not converged
    int alg1_iterations = 0;
    std::string bl_status;   ///< "feasible" or "infeasible"
    double bl_rate = 0.0;
};

struct SweepPoint {
    double sweep_value = 0.0;
    int n_trials = 0;
    int n_excluded = 0;      ///< trials dropped because either scheme failed
    double alg1_mean = 0.0, alg1_std = 0.0;
    double bl_mean = 0.0, bl_std = 0.0;
};

struct SweepResult {
    SweepVar variable = SweepVar::antennas;
    std::vector<TrialResult> trials;
    std::vector<SweepPoint> summary;
};

/// Applies one sweep value to a copy of the base config.
SystemConfig apply_sweep_value(const SystemConfig& base, SweepVar var, double value);

/// Runs the full sweep: for every value, `trials` channel draws, each
/// solved by Algorithm-1-style SCA and by the baseline on the same draw.
/// Trials run in parallel; reduction is in trial order, so the result is
/// independent of the worker count.
SweepResult run_sweep(const SystemConfig& base, const SweepSpec& spec);

/// CSV emission. `timestamp` lands in the first column of every row and is
/// the only non-deterministic content (excluded from golden comparisons).
void write_trials_csv(const SweepResult& r, const std::string& timestamp, std::ostream& os);
void write_summary_csv(const SweepResult& r, const std::string& timestamp, std::ostream& os);

std::string trials_csv_header();
std::string summary_csv_header();

}  // namespace fedmimo
