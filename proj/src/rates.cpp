#include "fedmimo/rates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace fedmimo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sum(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0);
}

void require_shape(const Allocation& a, const SystemConfig& cfg) {
    if (static_cast<int>(a.eta_d.size()) != cfg.l ||
        static_cast<int>(a.eta_u.size()) != cfg.l ||
        static_cast<int>(a.zeta_1.size()) != cfg.k ||
        static_cast<int>(a.zeta_2.size()) != cfg.k ||
        static_cast<int>(a.zeta_3.size()) != cfg.k)
        throw std::invalid_argument("allocation shape does not match config");
}

void require_index(int i, int n, const char* what) {
    if (i < 0 || i >= n) throw std::out_of_range(std::string(what) + ": index out of range");
}

}  // namespace

Allocation Allocation::zeros(int l, int k) {
    Allocation a;
    a.eta_d.assign(l, 0.0);
    a.zeta_1.assign(k, 0.0);
    a.zeta_2.assign(k, 0.0);
    a.eta_u.assign(l, 0.0);
    a.zeta_3.assign(k, 0.0);
    return a;
}

SinrParts sinr_s1_fl(const Allocation& a, const ChannelState& ch, const SystemConfig& cfg, int l) {
    require_shape(a, cfg);
    require_index(l, cfg.l, "sinr_s1_fl");
    const double gain = ch.beta_fl[l] - ch.sigma2_d[l];
    SinrParts s;
    s.numerator = cfg.rho_d * a.eta_d[l] * (cfg.m - cfg.l - cfg.k) * ch.sigma2_d[l];
    s.denominator = 1.0 + cfg.rho_d * gain * (sum(a.eta_d) + sum(a.zeta_1));
    return s;
}

SinrParts sinr_s1_nfl(const Allocation& a, const ChannelState& ch, const SystemConfig& cfg, int k) {
    require_shape(a, cfg);
    require_index(k, cfg.k, "sinr_s1_nfl");
    const double gain = ch.beta_nfl[k] - ch.sigma2_1[k];
    SinrParts s;
    s.numerator = cfg.rho_d * a.zeta_1[k] * (cfg.m - cfg.l - cfg.k) * ch.sigma2_1[k];
    s.denominator = 1.0 + cfg.rho_d * gain * (sum(a.zeta_1) + sum(a.eta_d));
    return s;
}

SinrParts sinr_s2(const Allocation& a, const ChannelState& ch, const SystemConfig& cfg, int k) {
    require_shape(a, cfg);
    require_index(k, cfg.k, "sinr_s2");
    const double gain = ch.beta_nfl[k] - ch.sigma2_2[k];
    SinrParts s;
    s.numerator = cfg.rho_d * a.zeta_2[k] * (cfg.m - cfg.k) * ch.sigma2_2[k];
    s.denominator = 1.0 + cfg.rho_d * gain * sum(a.zeta_2);
    return s;
}

SinrParts sinr_s3_ul(const Allocation& a, const ChannelState& ch, const SystemConfig& cfg, int l) {
    require_shape(a, cfg);
    require_index(l, cfg.l, "sinr_s3_ul");
    double interference = 0.0;
    for (int i = 0; i < cfg.l; ++i)
        interference += (ch.beta_fl[i] - ch.sigma2_u[i]) * a.eta_u[i];
    SinrParts s;
    s.numerator = cfg.rho_u * a.eta_u[l] * (cfg.m - cfg.l) * ch.sigma2_u[l];
    s.denominator = 1.0 + cfg.rho_u * interference;
    return s;
}

SinrParts sinr_s3_dl(const Allocation& a, const ChannelState& ch, const SystemConfig& cfg, int k) {
    require_shape(a, cfg);
    require_index(k, cfg.k, "sinr_s3_dl");
    const double gain = ch.beta_nfl[k] - ch.sigma2_3[k];
    SinrParts s;
    s.numerator = cfg.rho_d * a.zeta_3[k] * (cfg.m - cfg.k) * ch.sigma2_3[k];
    s.denominator = 1.0 + cfg.rho_d * gain * sum(a.zeta_3);
    return s;
}

double rate_from_sinr(double gamma, int tau_pilot, const SystemConfig& cfg, bool half_band) {
    if (gamma < 0) throw std::domain_error("rate_from_sinr: negative SINR");
    const double prelog = static_cast<double>(cfg.tau_c - tau_pilot) / cfg.tau_c;
    const double band = half_band ? cfg.bandwidth_hz / 2.0 : cfg.bandwidth_hz;
    return prelog * band * std::log2(1.0 + gamma);
}

bool PhaseTimes::finite() const {
    return std::isfinite(t_d) && std::isfinite(t_c) && std::isfinite(t_u);
}

PhaseTimes phase_times(const Allocation& a, const ChannelState& ch, const SystemConfig& cfg) {
    require_shape(a, cfg);
    double r_d = kInf, r_u = kInf;
    for (int l = 0; l < cfg.l; ++l) {
        r_d = std::min(r_d, rate_from_sinr(sinr_s1_fl(a, ch, cfg, l).value(), cfg.tau_dp, cfg, false));
        r_u = std::min(r_u, rate_from_sinr(sinr_s3_ul(a, ch, cfg, l).value(), cfg.tau_up, cfg, true));
    }
    PhaseTimes t;
    t.t_d = r_d > 0 ? cfg.s_d_bits / r_d : kInf;
    t.t_c = a.f > 0 ? cfg.compute_cycles() / a.f : kInf;
    t.t_u = r_u > 0 ? cfg.s_u_bits / r_u : kInf;
    return t;
}

RateReport evaluate(const Allocation& a, const ChannelState& ch, const SystemConfig& cfg) {
    require_shape(a, cfg);
    RateReport r;
    r.r_d_fl.resize(cfg.l);
    r.r_u_fl.resize(cfg.l);
    for (int l = 0; l < cfg.l; ++l) {
        r.r_d_fl[l] = rate_from_sinr(sinr_s1_fl(a, ch, cfg, l).value(), cfg.tau_dp, cfg, false);
        r.r_u_fl[l] = rate_from_sinr(sinr_s3_ul(a, ch, cfg, l).value(), cfg.tau_up, cfg, true);
    }
    r.r_d_group = *std::min_element(r.r_d_fl.begin(), r.r_d_fl.end());
    r.r_u_group = *std::min_element(r.r_u_fl.begin(), r.r_u_fl.end());

    r.r_1.resize(cfg.k);
    r.r_2.resize(cfg.k);
    r.r_3.resize(cfg.k);
    for (int k = 0; k < cfg.k; ++k) {
        r.r_1[k] = rate_from_sinr(sinr_s1_nfl(a, ch, cfg, k).value(), cfg.tau_1p, cfg, false);
        r.r_2[k] = rate_from_sinr(sinr_s2(a, ch, cfg, k).value(), cfg.tau_2p, cfg, false);
        r.r_3[k] = rate_from_sinr(sinr_s3_dl(a, ch, cfg, k).value(), cfg.tau_3p, cfg, true);
    }

    r.t_d = r.r_d_group > 0 ? cfg.s_d_bits / r.r_d_group : kInf;
    r.t_c = a.f > 0 ? cfg.compute_cycles() / a.f : kInf;
    r.t_u = r.r_u_group > 0 ? cfg.s_u_bits / r.r_u_group : kInf;

    r.d_1.assign(cfg.k, 0.0);
    r.d_2.assign(cfg.k, 0.0);
    r.d_3.assign(cfg.k, 0.0);
    r.eff_rate.assign(cfg.k, 0.0);

    const double total = r.round_time();
    if (std::isfinite(total)) {
        for (int k = 0; k < cfg.k; ++k) {
            r.d_1[k] = r.r_1[k] * r.t_d;
            r.d_2[k] = r.r_2[k] * r.t_c;
            r.d_3[k] = r.r_3[k] * r.t_u;
            r.eff_rate[k] = (r.d_1[k] + r.d_2[k] + r.d_3[k]) / total;
        }
        r.min_eff_rate = *std::min_element(r.eff_rate.begin(), r.eff_rate.end());
    } else {
        // The round never completes: no data is delivered in finite time.
        r.min_eff_rate = 0.0;
    }
    return r;
}

std::vector<Violation> check_feasibility(const Allocation& a, const ChannelState& ch,
                                         const SystemConfig& cfg, double tol) {
    require_shape(a, cfg);
    std::vector<Violation> out;
    auto flag = [&out](const std::string& name, double residual) {
        out.push_back({name, residual});
    };

    auto check_nonneg = [&](const std::vector<double>& v, const char* name) {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] < -tol) flag("nonneg:" + std::string(name) + "[" + std::to_string(i) + "]", -v[i]);
    };
    check_nonneg(a.eta_d, "eta_d");
    check_nonneg(a.zeta_1, "zeta_1");
    check_nonneg(a.zeta_2, "zeta_2");
    check_nonneg(a.eta_u, "eta_u");
    check_nonneg(a.zeta_3, "zeta_3");

    const double s1 = sum(a.eta_d) + sum(a.zeta_1);
    if (s1 > 1.0 + tol) flag("s1_power_budget", s1 - 1.0);
    const double s2 = sum(a.zeta_2);
    if (s2 > 1.0 + tol) flag("s2_power_budget", s2 - 1.0);
    for (int l = 0; l < cfg.l; ++l)
        if (a.eta_u[l] > 1.0 + tol)
            flag("s3_ul_power_cap[" + std::to_string(l) + "]", a.eta_u[l] - 1.0);
    const double s3 = sum(a.zeta_3);
    if (s3 > 1.0 + tol) flag("s3_power_budget", s3 - 1.0);

    if (a.f > cfg.f_max * (1.0 + tol)) flag("freq_range", a.f - cfg.f_max);
    if (a.f < cfg.f_min - tol * cfg.f_max) flag("freq_range", cfg.f_min - a.f);

    const PhaseTimes t = phase_times(a, ch, cfg);
    if (!t.finite())
        flag("qos_round_time", kInf);
    else if (t.total() > cfg.t_qos_s * (1.0 + tol))
        flag("qos_round_time", t.total() - cfg.t_qos_s);

    return out;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string join(const std::vector<std::string>& cols) {
    std::string out;
    for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
    return out;
}

}  // namespace

std::string rate_report_csv_header(int l, int k) {
    std::vector<std::string> cols;
    auto indexed = [&cols](const char* stem, int n) {
        for (int i = 0; i < n; ++i) cols.push_back(std::string(stem) + "_" + std::to_string(i));
    };
    indexed("r_d_fl_bps", l);
    cols.push_back("r_d_group_bps");
    indexed("r_1_bps", k);
    indexed("r_2_bps", k);
    indexed("r_u_fl_bps", l);
    cols.push_back("r_u_group_bps");
    indexed("r_3_bps", k);
    cols.insert(cols.end(), {"t_d_s", "t_c_s", "t_u_s"});
    indexed("d_1_bits", k);
    indexed("d_2_bits", k);
    indexed("d_3_bits", k);
    indexed("eff_rate_bps", k);
    cols.push_back("min_eff_rate_bps");
    return join(cols);
}

std::string rate_report_csv_row(const RateReport& r) {
    std::string os;
    bool first = true;
    auto put = [&](double v) {
        os += (first ? "" : ",");
        os += fmt(v);
        first = false;
    };
    for (double v : r.r_d_fl) put(v);
    put(r.r_d_group);
    for (double v : r.r_1) put(v);
    for (double v : r.r_2) put(v);
    for (double v : r.r_u_fl) put(v);
    put(r.r_u_group);
    for (double v : r.r_3) put(v);
    put(r.t_d);
    put(r.t_c);
    put(r.t_u);
    for (double v : r.d_1) put(v);
    for (double v : r.d_2) put(v);
    for (double v : r.d_3) put(v);
    for (double v : r.eff_rate) put(v);
    put(r.min_eff_rate);
    return os;
}

}  // namespace fedmimo
