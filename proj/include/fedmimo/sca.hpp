#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fedmimo/channel.hpp"
#include "fedmimo/config.hpp"
#include "fedmimo/cvxsolve.hpp"
#include "fedmimo/rates.hpp"
#include "fedmimo/surrogate.hpp"

namespace fedmimo {

/// Current expansion point of the successive approximation: the allocation
/// plus every auxiliary variable of the epigraph form, all in SI units
/// (rates bit/s, times s, t in bits, f in cycles/s). States produced by
/// initialize()/iterate() are strictly feasible for the epigraph program,
/// which is exactly what the next subproblem needs as a barrier start.
struct ScaState {
    Allocation allocation;

    double t = 0.0;    ///< bits, lower-bounds every UE's received data
    double t_q = 0.0;  ///< seconds, upper-bounds the round time
    double z = 0.0;    ///< bit/s, objective proxy (z * t_q <= t)
    double r_d = 0.0;  ///< bit/s, lower bound on the min FL downlink rate
    double r_u = 0.0;  ///< bit/s, lower bound on the min FL uplink rate
    double a1 = 0.0;   ///< share proxies: a1 <= r1_k / rt_d, etc.
    double a2 = 0.0;   ///< bit/cycle
    double a3 = 0.0;
    std::vector<double> r1, r2, r3;  ///< bit/s, per non-FL UE rate floors
    double rt_d = 0.0;  ///< bit/s, upper bound on every FL downlink rate
    double rt_u = 0.0;  ///< bit/s, upper bound on every FL uplink rate

    int iteration = 0;
};

enum class ScaStatus { converged, max_iter, infeasible_instance, solver_failure };

const char* to_string(ScaStatus s);

struct ScaOptions {
    // The convergence test (rel_tol) is the intended stopper; the cap only
    // guards against stalls. Power trajectories move multiplicatively under
    // these surrogates and routinely need 100-250 outer steps, so a small
    // cap silently truncates the optimization.
    int max_iter = 500;
    double rel_tol = 1e-4;        ///< relative change in z that stops the loop
    SolveTolerances solver_tol;   ///< passed through to the subproblem solver
};

struct SolveReport {
    Allocation allocation;          ///< final allocation
    std::vector<double> z_trace;    ///< subproblem objective per iteration (bit/s)
    double min_eff_rate = 0.0;      ///< exact objective at the final allocation (bit/s)
    int iterations = 0;
    ScaStatus status = ScaStatus::infeasible_instance;
    double wall_time_s = 0.0;
};

/// Builds the strictly feasible starting state: equal-power allocation
/// shrunk by a small margin, f at f_max (margined), auxiliaries tight from
/// the exact rates and then relaxed where strict inequality is required.
/// Returns infeasible_instance (via the status output) when the round time
/// at this point already exceeds t_qos.
struct InitResult {
    ScaState state;
    bool feasible = false;
};
InitResult initialize(const ChannelState& ch, const SystemConfig& cfg);

/// One outer step: expand the surrogates at s, solve the convex subproblem
/// from s, return the optimizer. `solver_ok=false` flags a subproblem
/// failure, in which case the input state is returned unchanged.
struct IterateResult {
    ScaState state;
    bool solver_ok = false;
    double subproblem_z = 0.0;  ///< bit/s
};
IterateResult iterate(const ScaState& s, const ChannelState& ch, const SystemConfig& cfg,
                      const SolveTolerances& tol = {}, std::ostream* solver_trace = nullptr);

/// Full outer loop until |z' - z| / max(z, eps) <= rel_tol or max_iter.
SolveReport run(const ChannelState& ch, const SystemConfig& cfg, const ScaOptions& opts = {},
                std::ostream* solver_trace = nullptr);

/// Assembles the convex subproblem expanded at state s (exposed for the
/// solver tests and the debug dump). Scaled units inside: rates Mbit/s,
/// f GHz, t Mbit, times s.
ConvexProgram build_subproblem(const ScaState& s, const ChannelState& ch,
                               const SystemConfig& cfg, const VarLayout& lay);

/// Scaled start vector matching build_subproblem's variable layout.
std::vector<double> scale_state(const ScaState& s, const VarLayout& lay);

/// State in SI units from a scaled solution vector.
ScaState unscale_state(std::span<const double> x, const VarLayout& lay, int iteration);

/// The largest t / t_q consistent with the ratio reformulation when every
/// auxiliary is set tight for a fixed allocation; equals the exact min
/// effective rate (asserted by tests and the acceptance suite).
double epigraph_ratio(const Allocation& a, const ChannelState& ch, const SystemConfig& cfg);

/// CSV serialization of a SolveReport (single row; see README for columns).
std::string solve_report_csv_header(int l, int k);
std::string solve_report_csv_row(const SolveReport& r);

}  // namespace fedmimo
