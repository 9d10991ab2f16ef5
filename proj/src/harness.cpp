#include "fedmimo/harness.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "fedmimo/baseline.hpp"
#include "fedmimo/channel.hpp"

namespace fedmimo {

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    const auto path = std::filesystem::path(dir) / name;
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    return os;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

int cmd_solve(const SolveCmdOptions& opts, std::ostream& err) {
    SystemConfig cfg;
    try {
        cfg = load_config(opts.config_path);
    } catch (const ConfigError& e) {
        err << e.what() << "\n";
        return kExitError;
    }

    const ChannelState ch = sample_layout(cfg, opts.seed);

    std::ofstream solver_log;
    std::ostream* solver_trace = nullptr;
    if (!opts.solver_log.empty()) {
        solver_log.open(opts.solver_log);
        solver_trace = &solver_log;
    }

    const SolveReport rep = run(ch, cfg, opts.sca, solver_trace);

    try {
        auto os = open_out(opts.out_dir, "solve_report.csv");
        os << solve_report_csv_header(cfg.l, cfg.k) << "\n" << solve_report_csv_row(rep) << "\n";
        if (opts.trace) {
            auto ts = open_out(opts.out_dir, "solve_trace.csv");
            ts << "iteration,z_bps\n";
            for (std::size_t i = 0; i < rep.z_trace.size(); ++i)
                ts << i << ',' << fmt(rep.z_trace[i]) << "\n";
        }
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kExitError;
    }

    if (rep.status == ScaStatus::infeasible_instance) return kExitInfeasible;
    if (rep.status == ScaStatus::solver_failure) {
        err << "subproblem solver failed at iteration " << rep.iterations << "\n";
        return kExitError;
    }
    return kExitOk;
}

int cmd_sweep(const SweepCmdOptions& opts, std::ostream& err) {
    SystemConfig cfg;
    SweepSpec spec;
    try {
        cfg = load_config(opts.config_path);
        spec.variable = parse_sweep_var(opts.var);
        spec.values = opts.values;
        spec.trials = opts.trials;
        spec.seed_base = opts.seed;
        spec.jobs = opts.jobs;
        spec.sca = opts.sca;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kExitError;
    }

    try {
        const SweepResult result = run_sweep(cfg, spec);
        const std::string stamp = utc_timestamp();
        auto trials = open_out(opts.out_dir, "sweep_trials.csv");
        write_trials_csv(result, stamp, trials);
        auto summary = open_out(opts.out_dir, "sweep_summary.csv");
        write_summary_csv(result, stamp, summary);
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kExitError;
    }
    return kExitOk;
}

std::string oracle_csv_header() {
    return "timestamp,seed,oracle_status,oracle_min_eff_rate_bps,alg1_status,"
           "alg1_min_eff_rate_bps,relative_gap";
}

int cmd_oracle(const OracleCmdOptions& opts, std::ostream& err) {
    SystemConfig cfg;
    try {
        cfg = load_config(opts.config_path);
    } catch (const ConfigError& e) {
        err << e.what() << "\n";
        return kExitError;
    }

    try {
        const ChannelState ch = sample_layout(cfg, opts.seed);
        const OracleResult oracle = grid_search(ch, cfg, opts.grid);
        const SolveReport alg1 = run(ch, cfg, opts.sca);

        const bool alg1_solved =
            alg1.status == ScaStatus::converged || alg1.status == ScaStatus::max_iter;
        double gap = 0.0;
        if (oracle.feasible && alg1_solved && oracle.objective > 0)
            gap = (alg1.min_eff_rate - oracle.objective) / oracle.objective;

        auto os = open_out(opts.out_dir, "oracle_report.csv");
        os << oracle_csv_header() << "\n";
        os << utc_timestamp() << ',' << opts.seed << ','
           << (oracle.feasible ? "feasible" : "infeasible") << ',' << fmt(oracle.objective) << ','
           << to_string(alg1.status) << ',' << fmt(alg1.min_eff_rate) << ',' << fmt(gap) << "\n";

        if (!oracle.feasible && alg1.status == ScaStatus::infeasible_instance)
            return kExitInfeasible;
        return kExitOk;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kExitError;
    }
}

}  // namespace fedmimo
