#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fedmimo/oracle.hpp"
#include "fedmimo/sweep.hpp"

namespace fedmimo {

/// Exit codes shared by the CLI: 0 solved, 1 usage/config error,
/// 2 infeasible instance.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInfeasible = 2;

struct SolveCmdOptions {
    std::string config_path;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
    bool trace = false;              ///< write per-iteration trace CSV
    std::string solver_log;          ///< optional barrier-solver log file
    ScaOptions sca;
};

struct SweepCmdOptions {
    std::string config_path;
    std::string var = "M";
    std::vector<double> values;
    int trials = 50;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
    int jobs = 0;
    ScaOptions sca;
};

struct OracleCmdOptions {
    std::string config_path;
    std::uint64_t seed = 1;
    GridSpec grid;
    std::string out_dir = ".";
    ScaOptions sca;
};

/// Single-instance solve; writes solve_report.csv (+ solve_trace.csv with
/// --trace) under out_dir.
int cmd_solve(const SolveCmdOptions& opts, std::ostream& err);

/// Monte-Carlo sweep; writes sweep_trials.csv and sweep_summary.csv.
int cmd_sweep(const SweepCmdOptions& opts, std::ostream& err);

/// Brute-force oracle vs the SCA solver on a tiny instance; writes
/// oracle_report.csv.
int cmd_oracle(const OracleCmdOptions& opts, std::ostream& err);

std::string oracle_csv_header();

/// ISO-8601 UTC timestamp used in CSV rows.
std::string utc_timestamp();

}  // namespace fedmimo
