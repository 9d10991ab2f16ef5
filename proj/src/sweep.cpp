#include "fedmimo/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "fedmimo/baseline.hpp"
#include "fedmimo/channel.hpp"

namespace fedmimo {

SweepVar parse_sweep_var(const std::string& name) {
    if (name == "M" || name == "m") return SweepVar::antennas;
    if (name == "L" || name == "l") return SweepVar::fl_users;
    if (name == "D" || name == "d") return SweepVar::side_length;
    throw std::invalid_argument("unknown sweep variable '" + name + "' (expected M, L or D)");
}

const char* to_string(SweepVar v) {
    switch (v) {
        case SweepVar::antennas: return "M";
        case SweepVar::fl_users: return "L";
        case SweepVar::side_length: return "D";
    }
    return "?";
}

SystemConfig apply_sweep_value(const SystemConfig& base, SweepVar var, double value) {
    SystemConfig cfg = base;
    switch (var) {
        case SweepVar::antennas: cfg.m = static_cast<int>(std::lround(value)); break;
        case SweepVar::fl_users: cfg.l = static_cast<int>(std::lround(value)); break;
        case SweepVar::side_length: cfg.d_side_m = value; break;
    }
    cfg.finalize();
    const auto problems = validate(cfg);
    if (!problems.empty())
        throw std::invalid_argument("sweep value " + std::to_string(value) +
                                    " yields an invalid config: " + problems.front());
    return cfg;
}

namespace {

TrialResult run_trial(const SystemConfig& cfg, double sweep_value, int trial,
                      std::uint64_t seed, const ScaOptions& sca_opts) {
    TrialResult tr;
    tr.sweep_value = sweep_value;
    tr.trial = trial;
    tr.seed = seed;

    // Paired-seed discipline: both schemes see the same draw.
    const ChannelState ch = sample_layout(cfg, seed);

    const BaselineResult bl = bl_allocation(ch, cfg);
    if (bl.feasible) {
        tr.bl_status = "feasible";
        tr.bl_rate = evaluate(bl.allocation, ch, cfg).min_eff_rate;
    } else {
        tr.bl_status = "infeasible";
    }

    const SolveReport rep = run(ch, cfg, sca_opts);
    tr.alg1_status = to_string(rep.status);
    tr.alg1_iterations = rep.iterations;
    if (rep.status == ScaStatus::converged || rep.status == ScaStatus::max_iter)
        tr.alg1_rate = rep.min_eff_rate;
    return tr;
}

bool trial_usable(const TrialResult& t) {
    return t.bl_status == "feasible" &&
           (t.alg1_status == "converged" || t.alg1_status == "max-iter");
}

}  // namespace

SweepResult run_sweep(const SystemConfig& base, const SweepSpec& spec) {
    if (spec.values.empty()) throw std::invalid_argument("sweep: no values given");
    if (spec.trials < 1) throw std::invalid_argument("sweep: trials must be >= 1");

    SweepResult result;
    result.variable = spec.variable;

    for (double value : spec.values) {
        const SystemConfig cfg = apply_sweep_value(base, spec.variable, value);

        std::vector<TrialResult> trials(spec.trials);
        unsigned jobs = spec.jobs > 0 ? spec.jobs : std::thread::hardware_concurrency();
        jobs = std::max(1u, std::min(jobs, static_cast<unsigned>(spec.trials)));

        std::atomic<int> next{0};
        auto worker = [&]() {
            for (int i = next.fetch_add(1); i < spec.trials; i = next.fetch_add(1))
                trials[i] = run_trial(cfg, value, i, spec.seed_base + i, spec.sca);
        };
        if (jobs == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            pool.reserve(jobs);
            for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }

        // Reduction in trial order; exclusions keep the comparison paired.
        SweepPoint pt;
        pt.sweep_value = value;
        pt.n_trials = spec.trials;
        double sum_a = 0, sum_b = 0, sq_a = 0, sq_b = 0;
        int n = 0;
        for (const auto& t : trials) {
            if (!trial_usable(t)) {
                ++pt.n_excluded;
                continue;
            }
            ++n;
            sum_a += t.alg1_rate;
            sum_b += t.bl_rate;
            sq_a += t.alg1_rate * t.alg1_rate;
            sq_b += t.bl_rate * t.bl_rate;
        }
        if (n > 0) {
            pt.alg1_mean = sum_a / n;
            pt.bl_mean = sum_b / n;
            if (n > 1) {
                pt.alg1_std = std::sqrt(std::max(0.0, (sq_a - n * pt.alg1_mean * pt.alg1_mean) / (n - 1)));
                pt.bl_std = std::sqrt(std::max(0.0, (sq_b - n * pt.bl_mean * pt.bl_mean) / (n - 1)));
            }
        }
        result.summary.push_back(pt);
        result.trials.insert(result.trials.end(), trials.begin(), trials.end());
    }
    return result;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

std::string trials_csv_header() {
    return "timestamp,sweep_var,sweep_value,trial,seed,alg1_status,alg1_min_eff_rate_bps,"
           "alg1_iterations,bl_status,bl_min_eff_rate_bps";
}

std::string summary_csv_header() {
    return "timestamp,sweep_var,sweep_value,n_trials,n_excluded,alg1_mean_bps,alg1_std_bps,"
           "bl_mean_bps,bl_std_bps";
}

void write_trials_csv(const SweepResult& r, const std::string& timestamp, std::ostream& os) {
    os << trials_csv_header() << "\n";
    for (const auto& t : r.trials) {
        os << timestamp << ',' << to_string(r.variable) << ',' << fmt(t.sweep_value) << ','
           << t.trial << ',' << t.seed << ',' << t.alg1_status << ',' << fmt(t.alg1_rate) << ','
           << t.alg1_iterations << ',' << t.bl_status << ',' << fmt(t.bl_rate) << "\n";
    }
}

void write_summary_csv(const SweepResult& r, const std::string& timestamp, std::ostream& os) {
    os << summary_csv_header() << "\n";
    for (const auto& p : r.summary) {
        os << timestamp << ',' << to_string(r.variable) << ',' << fmt(p.sweep_value) << ','
           << p.n_trials << ',' << p.n_excluded << ',' << fmt(p.alg1_mean) << ','
           << fmt(p.alg1_std) << ',' << fmt(p.bl_mean) << ',' << fmt(p.bl_std) << "\n";
    }
}

}  // namespace fedmimo
