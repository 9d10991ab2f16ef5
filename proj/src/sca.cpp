#include "fedmimo/sca.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace fedmimo {

namespace {

// Internal solver units: rates in Mbit/s (and t in Mbit), f in Gcycle/s,
// times in seconds. Keeps the Newton system well conditioned; SI at every
// public boundary.
constexpr double kRateScale = 1e6;
constexpr double kFreqScale = 1e9;

double list_min(const std::vector<double>& v) {
    return *std::min_element(v.begin(), v.end());
}
double list_max(const std::vector<double>& v) {
    return *std::max_element(v.begin(), v.end());
}

double freq_floor(const SystemConfig& cfg) {
    return std::max(cfg.f_min, 1e-9 * cfg.f_max);
}

}  // namespace

const char* to_string(ScaStatus s) {
    switch (s) {
        case ScaStatus::converged: return "converged";
        case ScaStatus::max_iter: return "max-iter";
        case ScaStatus::infeasible_instance: return "infeasible-instance";
        case ScaStatus::solver_failure: return "solver-failure";
    }
    return "unknown";
}

std::vector<double> scale_state(const ScaState& s, const VarLayout& lay) {
    std::vector<double> x(lay.size(), 0.0);
    for (int i = 0; i < lay.l; ++i) {
        x[lay.eta_d(i)] = s.allocation.eta_d[i];
        x[lay.eta_u(i)] = s.allocation.eta_u[i];
    }
    for (int i = 0; i < lay.k; ++i) {
        x[lay.zeta_1(i)] = s.allocation.zeta_1[i];
        x[lay.zeta_2(i)] = s.allocation.zeta_2[i];
        x[lay.zeta_3(i)] = s.allocation.zeta_3[i];
        x[lay.r1(i)] = s.r1[i] / kRateScale;
        x[lay.r2(i)] = s.r2[i] / kRateScale;
        x[lay.r3(i)] = s.r3[i] / kRateScale;
    }
    x[lay.f()] = s.allocation.f / kFreqScale;
    x[lay.t()] = s.t / kRateScale;
    x[lay.t_q()] = s.t_q;
    x[lay.z()] = s.z / kRateScale;
    x[lay.r_d()] = s.r_d / kRateScale;
    x[lay.r_u()] = s.r_u / kRateScale;
    x[lay.a1()] = s.a1;
    x[lay.a2()] = s.a2 * kFreqScale / kRateScale;
    x[lay.a3()] = s.a3;
    x[lay.rt_d()] = s.rt_d / kRateScale;
    x[lay.rt_u()] = s.rt_u / kRateScale;
    return x;
}

ScaState unscale_state(std::span<const double> x, const VarLayout& lay, int iteration) {
    ScaState s;
    s.allocation = Allocation::zeros(lay.l, lay.k);
    for (int i = 0; i < lay.l; ++i) {
        s.allocation.eta_d[i] = x[lay.eta_d(i)];
        s.allocation.eta_u[i] = x[lay.eta_u(i)];
    }
    s.r1.resize(lay.k);
    s.r2.resize(lay.k);
    s.r3.resize(lay.k);
    for (int i = 0; i < lay.k; ++i) {
        s.allocation.zeta_1[i] = x[lay.zeta_1(i)];
        s.allocation.zeta_2[i] = x[lay.zeta_2(i)];
        s.allocation.zeta_3[i] = x[lay.zeta_3(i)];
        s.r1[i] = x[lay.r1(i)] * kRateScale;
        s.r2[i] = x[lay.r2(i)] * kRateScale;
        s.r3[i] = x[lay.r3(i)] * kRateScale;
    }
    s.allocation.f = x[lay.f()] * kFreqScale;
    s.t = x[lay.t()] * kRateScale;
    s.t_q = x[lay.t_q()];
    s.z = x[lay.z()] * kRateScale;
    s.r_d = x[lay.r_d()] * kRateScale;
    s.r_u = x[lay.r_u()] * kRateScale;
    s.a1 = x[lay.a1()];
    s.a2 = x[lay.a2()] * kRateScale / kFreqScale;
    s.a3 = x[lay.a3()];
    s.rt_d = x[lay.rt_d()] * kRateScale;
    s.rt_u = x[lay.rt_u()] * kRateScale;
    s.iteration = iteration;
    return s;
}

ConvexProgram build_subproblem(const ScaState& s, const ChannelState& ch,
                               const SystemConfig& cfg, const VarLayout& lay) {
    const std::vector<double> xn = scale_state(s, lay);
    const SurrogateTerms terms = build_terms(s.allocation, ch, cfg, lay, kRateScale);

    ConvexProgram p;
    p.var_names = lay.names();
    p.objective_var = lay.z();

    auto add = [&p](ConvexExpr expr, std::string tag) {
        p.constraints.push_back({std::move(expr), std::move(tag)});
    };
    auto affine_le = [&add](AffineExpr a, std::string tag) {
        add(ConvexExpr(std::move(a)), std::move(tag));
    };

    const double s_d = cfg.s_d_bits / kRateScale;
    const double s_u = cfg.s_u_bits / kRateScale;
    const double cycles = cfg.compute_cycles() / kFreqScale;

    // Power budgets and frequency box.
    {
        AffineExpr a(-1.0);
        for (int i = 0; i < lay.l; ++i) a.add(lay.eta_d(i), 1.0);
        for (int i = 0; i < lay.k; ++i) a.add(lay.zeta_1(i), 1.0);
        affine_le(std::move(a), "s1_power_budget");
    }
    {
        AffineExpr a(-1.0);
        for (int i = 0; i < lay.k; ++i) a.add(lay.zeta_2(i), 1.0);
        affine_le(std::move(a), "s2_power_budget");
    }
    for (int i = 0; i < lay.l; ++i) {
        AffineExpr a(-1.0);
        a.add(lay.eta_u(i), 1.0);
        affine_le(std::move(a), "s3_ul_power_cap[" + std::to_string(i) + "]");
    }
    {
        AffineExpr a(-1.0);
        for (int i = 0; i < lay.k; ++i) a.add(lay.zeta_3(i), 1.0);
        affine_le(std::move(a), "s3_power_budget");
    }
    {
        AffineExpr a(-cfg.f_max / kFreqScale);
        a.add(lay.f(), 1.0);
        affine_le(std::move(a), "freq_upper");
    }
    {
        AffineExpr a(freq_floor(cfg) / kFreqScale);
        a.add(lay.f(), -1.0);
        affine_le(std::move(a), "freq_lower");
    }
    {
        AffineExpr a(-cfg.t_qos_s);
        a.add(lay.t_q(), 1.0);
        affine_le(std::move(a), "qos_deadline");
    }

    // z * t_q <= t via the bilinear majorant.
    {
        ConvexExpr e = bilinear_upper_bound(lay.z(), lay.t_q(), xn[lay.z()], xn[lay.t_q()]);
        e.affine.add(lay.t(), -1.0);
        add(std::move(e), "rate_time_product");
    }

    // t <= a1*S_d + a2*cycles + a3*S_u.
    {
        AffineExpr a;
        a.add(lay.t(), 1.0);
        a.add(lay.a1(), -s_d);
        a.add(lay.a2(), -cycles);
        a.add(lay.a3(), -s_u);
        affine_le(std::move(a), "round_data_floor");
    }

    // S_d/r_d + cycles/f + S_u/r_u <= t_q.
    {
        ConvexExpr e;
        e.affine.add(lay.t_q(), -1.0);
        e.add_reciprocal(s_d, AffineExpr().add(lay.r_d(), 1.0));
        e.add_reciprocal(cycles, AffineExpr().add(lay.f(), 1.0));
        e.add_reciprocal(s_u, AffineExpr().add(lay.r_u(), 1.0));
        add(std::move(e), "round_time_budget");
    }

    // Rate floors through the concave lower bounds.
    auto add_floor = [&](const LinearRatioTerm& term, int rate_var, std::string tag) {
        ConvexExpr e = log_lower_bound(term).negated;
        e.affine.add(rate_var, 1.0);
        add(std::move(e), std::move(tag));
    };
    for (int i = 0; i < lay.l; ++i) {
        add_floor(terms.s1_fl[i], lay.r_d(), "fl_dl_rate_floor[" + std::to_string(i) + "]");
        add_floor(terms.s3_ul[i], lay.r_u(), "fl_ul_rate_floor[" + std::to_string(i) + "]");
    }
    for (int i = 0; i < lay.k; ++i) {
        add_floor(terms.s1_nfl[i], lay.r1(i), "s1_rate_floor[" + std::to_string(i) + "]");
        add_floor(terms.s2[i], lay.r2(i), "s2_rate_floor[" + std::to_string(i) + "]");
        add_floor(terms.s3_dl[i], lay.r3(i), "s3_rate_floor[" + std::to_string(i) + "]");
    }

    // Share products a1*rt_d <= r1_k, a2*f <= r2_k, a3*rt_u <= r3_k.
    for (int i = 0; i < lay.k; ++i) {
        ConvexExpr e1 = bilinear_upper_bound(lay.a1(), lay.rt_d(), xn[lay.a1()], xn[lay.rt_d()]);
        e1.affine.add(lay.r1(i), -1.0);
        add(std::move(e1), "s1_share_product[" + std::to_string(i) + "]");

        ConvexExpr e2 = bilinear_upper_bound(lay.a2(), lay.f(), xn[lay.a2()], xn[lay.f()]);
        e2.affine.add(lay.r2(i), -1.0);
        add(std::move(e2), "s2_share_product[" + std::to_string(i) + "]");

        ConvexExpr e3 = bilinear_upper_bound(lay.a3(), lay.rt_u(), xn[lay.a3()], xn[lay.rt_u()]);
        e3.affine.add(lay.r3(i), -1.0);
        add(std::move(e3), "s3_share_product[" + std::to_string(i) + "]");
    }

    // FL rate caps through the convex upper bounds.
    for (int i = 0; i < lay.l; ++i) {
        ConvexExpr ed = log_upper_bound(terms.s1_fl[i]);
        ed.affine.add(lay.rt_d(), -1.0);
        add(std::move(ed), "fl_dl_rate_cap[" + std::to_string(i) + "]");

        ConvexExpr eu = log_upper_bound(terms.s3_ul[i]);
        eu.affine.add(lay.rt_u(), -1.0);
        add(std::move(eu), "fl_ul_rate_cap[" + std::to_string(i) + "]");
    }

    // Nonnegativity for the powers, floors for every auxiliary. r_d, r_u
    // sit in reciprocal denominators, so they get a positive floor.
    const auto names = lay.names();
    auto nonneg = [&](int var, double floor, const char* kind) {
        AffineExpr a(floor);
        a.add(var, -1.0);
        affine_le(std::move(a), std::string(kind) + ":" + names[var]);
    };
    for (int i = 0; i < lay.l; ++i) {
        nonneg(lay.eta_d(i), 0.0, "nonneg");
        nonneg(lay.eta_u(i), 0.0, "nonneg");
    }
    for (int i = 0; i < lay.k; ++i) {
        nonneg(lay.zeta_1(i), 0.0, "nonneg");
        nonneg(lay.zeta_2(i), 0.0, "nonneg");
        nonneg(lay.zeta_3(i), 0.0, "nonneg");
        nonneg(lay.r1(i), 0.0, "nonneg");
        nonneg(lay.r2(i), 0.0, "nonneg");
        nonneg(lay.r3(i), 0.0, "nonneg");
    }
    const double rate_eps = 1e-9 * cfg.bandwidth_hz / kRateScale;
    nonneg(lay.r_d(), rate_eps, "floor");
    nonneg(lay.r_u(), rate_eps, "floor");
    nonneg(lay.t(), 0.0, "nonneg");
    nonneg(lay.t_q(), 0.0, "nonneg");
    nonneg(lay.z(), 0.0, "nonneg");
    nonneg(lay.a1(), 0.0, "nonneg");
    nonneg(lay.a2(), 0.0, "nonneg");
    nonneg(lay.a3(), 0.0, "nonneg");
    nonneg(lay.rt_d(), 0.0, "nonneg");
    nonneg(lay.rt_u(), 0.0, "nonneg");

    return p;
}

InitResult initialize(const ChannelState& ch, const SystemConfig& cfg) {
    InitResult out;
    const int L = cfg.l, K = cfg.k;
    const double delta0 = 1e-3;

    auto margined = [&](double delta) {
        Allocation a = Allocation::zeros(L, K);
        std::fill(a.eta_d.begin(), a.eta_d.end(), (1.0 - delta) / (L + K));
        std::fill(a.zeta_1.begin(), a.zeta_1.end(), (1.0 - delta) / (L + K));
        std::fill(a.zeta_2.begin(), a.zeta_2.end(), (1.0 - delta) / K);
        std::fill(a.zeta_3.begin(), a.zeta_3.end(), (1.0 - delta) / K);
        std::fill(a.eta_u.begin(), a.eta_u.end(), 1.0 - delta);
        a.f = cfg.f_max * (1.0 - delta);
        return a;
    };

    // Feasibility gate: the margined equal-power point with f at f_max.
    {
        Allocation probe = margined(delta0);
        probe.f = cfg.f_max;
        const RateReport rr = evaluate(probe, ch, cfg);
        if (!(rr.round_time() <= cfg.t_qos_s)) return out;  // infeasible instance
    }

    // Shrink the margin until every strict inequality has room; the gate
    // above guarantees this terminates for any instance with real slack.
    for (double delta = delta0; delta >= 1e-13; delta *= 0.1) {
        const Allocation a = margined(delta);
        if (!(a.f > freq_floor(cfg))) continue;
        const RateReport rr = evaluate(a, ch, cfg);
        if (!std::isfinite(rr.round_time())) continue;

        ScaState s;
        s.allocation = a;
        s.r_d = (1.0 - delta) * rr.r_d_group;
        s.r_u = (1.0 - delta) * rr.r_u_group;
        const double aux_time =
            cfg.s_d_bits / s.r_d + cfg.compute_cycles() / a.f + cfg.s_u_bits / s.r_u;
        if (!(aux_time < cfg.t_qos_s)) continue;

        const double headroom = cfg.t_qos_s - aux_time;
        s.t_q = aux_time + std::min(delta * aux_time, 0.5 * headroom);
        s.rt_d = (1.0 + delta) * list_max(rr.r_d_fl);
        s.rt_u = (1.0 + delta) * list_max(rr.r_u_fl);
        s.r1.resize(K);
        s.r2.resize(K);
        s.r3.resize(K);
        for (int k = 0; k < K; ++k) {
            s.r1[k] = (1.0 - delta) * rr.r_1[k];
            s.r2[k] = (1.0 - delta) * rr.r_2[k];
            s.r3[k] = (1.0 - delta) * rr.r_3[k];
        }
        s.a1 = (1.0 - delta) * list_min(s.r1) / s.rt_d;
        s.a2 = (1.0 - delta) * list_min(s.r2) / a.f;
        s.a3 = (1.0 - delta) * list_min(s.r3) / s.rt_u;
        s.t = (1.0 - delta) *
              (s.a1 * cfg.s_d_bits + s.a2 * cfg.compute_cycles() + s.a3 * cfg.s_u_bits);
        s.z = (1.0 - delta) * s.t / s.t_q;
        s.iteration = 0;

        out.state = std::move(s);
        out.feasible = true;
        return out;
    }
    return out;
}

IterateResult iterate(const ScaState& s, const ChannelState& ch, const SystemConfig& cfg,
                      const SolveTolerances& tol, std::ostream* solver_trace) {
    IterateResult out;
    out.state = s;

    const VarLayout lay{cfg.l, cfg.k};
    const ConvexProgram prog = build_subproblem(s, ch, cfg, lay);
    const std::vector<double> start = scale_state(s, lay);

    // Re-expanded subproblems barely move the feasible set, so the previous
    // optimum is already near the central path; a small initial barrier
    // parameter skips the early stages.
    SolveTolerances tuned = tol;
    if (s.iteration >= 1 && tuned.mu0 == 1.0) tuned.mu0 = 1e-2;

    Solution sol;
    try {
        sol = solve(prog, start, tuned, solver_trace);
    } catch (const std::invalid_argument&) {
        return out;  // start not strictly interior: report failure, keep state
    }
    if (sol.status != SolveStatus::optimal) return out;

    out.state = unscale_state(sol.x, lay, s.iteration + 1);
    out.solver_ok = true;
    out.subproblem_z = sol.objective * kRateScale;
    return out;
}

SolveReport run(const ChannelState& ch, const SystemConfig& cfg, const ScaOptions& opts,
                std::ostream* solver_trace) {
    const auto t0 = std::chrono::steady_clock::now();
    SolveReport rep;

    InitResult init = initialize(ch, cfg);
    if (!init.feasible) {
        rep.status = ScaStatus::infeasible_instance;
        rep.allocation = Allocation::zeros(cfg.l, cfg.k);
        rep.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return rep;
    }

    ScaState s = init.state;
    rep.z_trace.push_back(s.z);
    rep.status = ScaStatus::max_iter;

    double z_prev = s.z;
    for (int i = 1; i <= opts.max_iter; ++i) {
        IterateResult res = iterate(s, ch, cfg, opts.solver_tol, solver_trace);
        if (!res.solver_ok) {
            rep.status = ScaStatus::solver_failure;
            rep.iterations = i - 1;
            break;
        }
        s = res.state;
        rep.z_trace.push_back(res.subproblem_z);
        rep.iterations = i;
        if (std::abs(res.subproblem_z - z_prev) <= opts.rel_tol * std::max(z_prev, 1e-12)) {
            rep.status = ScaStatus::converged;
            break;
        }
        z_prev = res.subproblem_z;
    }

    rep.allocation = s.allocation;
    rep.min_eff_rate = evaluate(s.allocation, ch, cfg).min_eff_rate;
    rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

double epigraph_ratio(const Allocation& a, const ChannelState& ch, const SystemConfig& cfg) {
    const RateReport rr = evaluate(a, ch, cfg);
    if (!std::isfinite(rr.round_time())) return 0.0;

    // Auxiliaries at their tight values: r_d, r_u at the group minima, each
    // per-UE rate floor at the exact rate, t at the worst UE's data volume
    // and t_q at the exact round time.
    const double t_d = cfg.s_d_bits / rr.r_d_group;
    const double t_c = cfg.compute_cycles() / a.f;
    const double t_u = cfg.s_u_bits / rr.r_u_group;
    double t = std::numeric_limits<double>::infinity();
    for (int k = 0; k < cfg.k; ++k)
        t = std::min(t, rr.r_1[k] * t_d + rr.r_2[k] * t_c + rr.r_3[k] * t_u);
    const double t_q = t_d + t_c + t_u;
    return t / t_q;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

std::string solve_report_csv_header(int l, int k) {
    std::string h = "status,iterations,min_eff_rate_bps,z_final_bps,wall_time_s";
    auto indexed = [&h](const char* stem, int n) {
        for (int i = 0; i < n; ++i) h += "," + std::string(stem) + "_" + std::to_string(i);
    };
    indexed("eta_d", l);
    indexed("zeta_1", k);
    indexed("zeta_2", k);
    indexed("eta_u", l);
    indexed("zeta_3", k);
    h += ",f_hz";
    return h;
}

std::string solve_report_csv_row(const SolveReport& r) {
    std::string row = to_string(r.status);
    row += "," + std::to_string(r.iterations);
    row += "," + fmt(r.min_eff_rate);
    row += "," + fmt(r.z_trace.empty() ? 0.0 : r.z_trace.back());
    row += "," + fmt(r.wall_time_s);
    for (double v : r.allocation.eta_d) row += "," + fmt(v);
    for (double v : r.allocation.zeta_1) row += "," + fmt(v);
    for (double v : r.allocation.zeta_2) row += "," + fmt(v);
    for (double v : r.allocation.eta_u) row += "," + fmt(v);
    for (double v : r.allocation.zeta_3) row += "," + fmt(v);
    row += "," + fmt(r.allocation.f);
    return row;
}

}  // namespace fedmimo
