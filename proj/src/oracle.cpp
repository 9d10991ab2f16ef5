#include "fedmimo/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace fedmimo {

namespace {

constexpr double kPowerFloor = 1e-6;  // smallest power coefficient gridded

// Grid points on [lo, hi]: log-spaced below 0.1 (the objective is most
// sensitive at small power), linear above, endpoints always included.
std::vector<double> power_axis(double lo, double hi, int n) {
    lo = std::max(lo, kPowerFloor);
    std::vector<double> pts;
    pts.reserve(n);
    if (lo >= 0.1) {
        for (int i = 0; i < n; ++i) pts.push_back(lo + (hi - lo) * i / (n - 1));
    } else if (hi <= 0.1) {
        const double llo = std::log(lo), lhi = std::log(hi);
        for (int i = 0; i < n; ++i) pts.push_back(std::exp(llo + (lhi - llo) * i / (n - 1)));
    } else {
        const int n_log = n / 2;
        const int n_lin = n - n_log;
        const double llo = std::log(lo), lhi = std::log(0.1);
        for (int i = 0; i < n_log; ++i) pts.push_back(std::exp(llo + (lhi - llo) * i / n_log));
        for (int i = 0; i < n_lin; ++i) pts.push_back(0.1 + (hi - 0.1) * i / (n_lin - 1));
    }
    return pts;
}

std::vector<double> log_axis(double lo, double hi, int n) {
    std::vector<double> pts;
    pts.reserve(n);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i) pts.push_back(std::exp(llo + (lhi - llo) * i / (n - 1)));
    return pts;
}

struct Box {
    double lo, hi;
};

Box refine_around(const std::vector<double>& pts, int idx, const Box& outer) {
    const int lo_i = std::max(idx - 1, 0);
    const int hi_i = std::min(idx + 1, static_cast<int>(pts.size()) - 1);
    return {std::max(pts[lo_i], outer.lo), std::min(pts[hi_i], outer.hi)};
}

}  // namespace

OracleResult grid_search(const ChannelState& ch, const SystemConfig& cfg, const GridSpec& grid) {
    if (2 * cfg.l + 3 * cfg.k + 1 > 6)
        throw std::invalid_argument("grid_search: instance too large (requires L = K = 1)");
    if (grid.steps < 3 || grid.rounds < 1)
        throw std::invalid_argument("grid_search: need steps >= 3 and rounds >= 1");

    OracleResult out;

    // SINR ingredients, hoisted out of the search loops.
    const double m2 = cfg.m - cfg.l - cfg.k;  // S1 array gain
    const double mk = cfg.m - cfg.k;
    const double ml = cfg.m - cfg.l;
    const double b_fl = ch.beta_fl[0], b_nfl = ch.beta_nfl[0];
    const double pre_d = rate_from_sinr(1.0, cfg.tau_dp, cfg, false) /* == prelog*B */;
    const double pre_1 = rate_from_sinr(1.0, cfg.tau_1p, cfg, false);
    const double pre_2 = rate_from_sinr(1.0, cfg.tau_2p, cfg, false);
    const double pre_u = rate_from_sinr(1.0, cfg.tau_up, cfg, true);
    const double pre_3 = rate_from_sinr(1.0, cfg.tau_3p, cfg, true);

    auto rate = [](double prelog_bits, double gamma) {
        // prelog_bits is the rate at SINR 1 (log2(2) = 1), so scale by log2(1+g).
        return prelog_bits * std::log2(1.0 + gamma);
    };

    const double cycles = cfg.compute_cycles();
    const double f_absolute_lo = std::max({cfg.f_min, cycles / cfg.t_qos_s, 1.0});
    if (f_absolute_lo > cfg.f_max) return out;  // compute alone exceeds the deadline

    const Box pbox{kPowerFloor, 1.0};
    const Box fbox{f_absolute_lo, cfg.f_max};
    Box b_eta_d = pbox, b_zeta_1 = pbox, b_zeta_2 = pbox, b_eta_u = pbox, b_zeta_3 = pbox;
    Box b_f = fbox;

    double best = -1.0;
    Allocation best_alloc = Allocation::zeros(1, 1);

    for (int round = 0; round < grid.rounds; ++round) {
        const auto eta_d_pts = power_axis(b_eta_d.lo, b_eta_d.hi, grid.steps);
        const auto zeta_1_pts = power_axis(b_zeta_1.lo, b_zeta_1.hi, grid.steps);
        const auto zeta_2_pts = power_axis(b_zeta_2.lo, b_zeta_2.hi, grid.steps);
        const auto eta_u_pts = power_axis(b_eta_u.lo, b_eta_u.hi, grid.steps);
        const auto zeta_3_pts = power_axis(b_zeta_3.lo, b_zeta_3.hi, grid.steps);
        const auto f_pts = log_axis(b_f.lo, b_f.hi, grid.steps);

        // Per-axis precomputation.
        std::vector<double> r2s(zeta_2_pts.size()), r3s(zeta_3_pts.size());
        for (std::size_t i = 0; i < zeta_2_pts.size(); ++i) {
            const double z = zeta_2_pts[i];
            const double g = cfg.rho_d * z * mk * ch.sigma2_2[0] /
                             (1.0 + cfg.rho_d * (b_nfl - ch.sigma2_2[0]) * z);
            r2s[i] = rate(pre_2, g);
        }
        for (std::size_t i = 0; i < zeta_3_pts.size(); ++i) {
            const double z = zeta_3_pts[i];
            const double g = cfg.rho_d * z * mk * ch.sigma2_3[0] /
                             (1.0 + cfg.rho_d * (b_nfl - ch.sigma2_3[0]) * z);
            r3s[i] = rate(pre_3, g);
        }
        std::vector<double> tus(eta_u_pts.size());
        for (std::size_t i = 0; i < eta_u_pts.size(); ++i) {
            const double e = eta_u_pts[i];
            const double g = cfg.rho_u * e * ml * ch.sigma2_u[0] /
                             (1.0 + cfg.rho_u * (b_fl - ch.sigma2_u[0]) * e);
            const double ru = rate(pre_u, g);
            tus[i] = ru > 0 ? cfg.s_u_bits / ru : std::numeric_limits<double>::infinity();
        }
        std::vector<double> tcs(f_pts.size());
        for (std::size_t i = 0; i < f_pts.size(); ++i) tcs[i] = cycles / f_pts[i];

        int bi[6] = {-1, -1, -1, -1, -1, -1};
        for (std::size_t i0 = 0; i0 < eta_d_pts.size(); ++i0) {
            for (std::size_t i1 = 0; i1 < zeta_1_pts.size(); ++i1) {
                const double eta_d = eta_d_pts[i0], zeta_1 = zeta_1_pts[i1];
                if (eta_d + zeta_1 > 1.0) continue;
                const double denom_s1 = eta_d + zeta_1;
                const double gd = cfg.rho_d * eta_d * m2 * ch.sigma2_d[0] /
                                  (1.0 + cfg.rho_d * (b_fl - ch.sigma2_d[0]) * denom_s1);
                const double g1 = cfg.rho_d * zeta_1 * m2 * ch.sigma2_1[0] /
                                  (1.0 + cfg.rho_d * (b_nfl - ch.sigma2_1[0]) * denom_s1);
                const double rd = rate(pre_d, gd);
                if (rd <= 0) continue;
                const double td = cfg.s_d_bits / rd;
                if (td >= cfg.t_qos_s) continue;
                const double r1 = rate(pre_1, g1);
                const double base1 = r1 * td;
                for (std::size_t iu = 0; iu < eta_u_pts.size(); ++iu) {
                    const double tu = tus[iu];
                    if (td + tu >= cfg.t_qos_s) continue;
                    for (std::size_t jf = 0; jf < f_pts.size(); ++jf) {
                        const double tc = tcs[jf];
                        const double total = td + tc + tu;
                        if (total > cfg.t_qos_s) continue;
                        out.evaluated +=
                            static_cast<long long>(zeta_2_pts.size() * zeta_3_pts.size());
                        const double inv_total = 1.0 / total;
                        for (std::size_t i2 = 0; i2 < zeta_2_pts.size(); ++i2) {
                            const double base2 = base1 + r2s[i2] * tc;
                            for (std::size_t i3 = 0; i3 < zeta_3_pts.size(); ++i3) {
                                const double eff = (base2 + r3s[i3] * tu) * inv_total;
                                if (eff > best) {
                                    best = eff;
                                    bi[0] = static_cast<int>(i0);
                                    bi[1] = static_cast<int>(i1);
                                    bi[2] = static_cast<int>(i2);
                                    bi[3] = static_cast<int>(iu);
                                    bi[4] = static_cast<int>(i3);
                                    bi[5] = static_cast<int>(jf);
                                }
                            }
                        }
                    }
                }
            }
        }

        if (bi[0] < 0) {
            if (best < 0) return out;  // nothing feasible this round (or ever)
            break;
        }

        best_alloc.eta_d[0] = eta_d_pts[bi[0]];
        best_alloc.zeta_1[0] = zeta_1_pts[bi[1]];
        best_alloc.zeta_2[0] = zeta_2_pts[bi[2]];
        best_alloc.eta_u[0] = eta_u_pts[bi[3]];
        best_alloc.zeta_3[0] = zeta_3_pts[bi[4]];
        best_alloc.f = f_pts[bi[5]];

        b_eta_d = refine_around(eta_d_pts, bi[0], pbox);
        b_zeta_1 = refine_around(zeta_1_pts, bi[1], pbox);
        b_zeta_2 = refine_around(zeta_2_pts, bi[2], pbox);
        b_eta_u = refine_around(eta_u_pts, bi[3], pbox);
        b_zeta_3 = refine_around(zeta_3_pts, bi[4], pbox);
        b_f = refine_around(f_pts, bi[5], fbox);
    }

    if (best < 0) return out;
    out.allocation = best_alloc;
    out.objective = evaluate(best_alloc, ch, cfg).min_eff_rate;
    out.feasible = true;
    return out;
}

}  // namespace fedmimo
