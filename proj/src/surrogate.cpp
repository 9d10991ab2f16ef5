#include "fedmimo/surrogate.hpp"

#include <cmath>
#include <stdexcept>

namespace fedmimo {

std::vector<std::string> VarLayout::names() const {
    std::vector<std::string> n(size());
    auto indexed = [&n](const char* stem, int base, int count) {
        for (int i = 0; i < count; ++i) n[base + i] = std::string(stem) + "[" + std::to_string(i) + "]";
    };
    indexed("eta_d", eta_d(0), l);
    indexed("zeta_1", zeta_1(0), k);
    indexed("zeta_2", zeta_2(0), k);
    indexed("eta_u", eta_u(0), l);
    indexed("zeta_3", zeta_3(0), k);
    n[f()] = "f";
    n[t()] = "t";
    n[t_q()] = "t_q";
    n[z()] = "z";
    n[r_d()] = "r_d";
    n[r_u()] = "r_u";
    n[a1()] = "a1";
    n[a2()] = "a2";
    n[a3()] = "a3";
    indexed("r1", r1(0), k);
    indexed("r2", r2(0), k);
    indexed("r3", r3(0), k);
    n[rt_d()] = "rt_d";
    n[rt_u()] = "rt_u";
    return n;
}

double LinearRatioTerm::rate_at_expansion() const {
    return prelog * std::log1p(x_n / y_n);
}

void LinearRatioTerm::require_valid() const {
    if (!(x_n > 0.0) || !(y_n > 0.0))
        throw std::invalid_argument("surrogate expansion point must be strictly interior");
}

double log_lower_bound_value(double x, double y, double x_n, double y_n) {
    const double s = x_n + y_n;
    return std::log1p(x_n / y_n) + 2.0 * x_n / s - x_n * x_n / (s * x) - x_n * y / (s * y_n);
}

double log_upper_bound_value(double x, double y, double x_n, double y_n) {
    const double s = x_n + y_n;
    return std::log1p(x_n / y_n) + (y_n / s) * ((x * x + x_n * x_n) / (2.0 * x_n * y) - x_n / y_n);
}

double bilinear_upper_bound_value(double u, double v, double u_n, double v_n) {
    const double c = u_n - v_n;
    const double s = u + v;
    return 0.25 * (s * s - 2.0 * c * (u - v) + c * c);
}

ConcaveExpr log_lower_bound(const LinearRatioTerm& term) {
    term.require_valid();
    const double s = term.x_n + term.y_n;
    const double c_n = std::log1p(term.x_n / term.y_n) + 2.0 * term.x_n / s;
    const double recip_w = term.x_n * term.x_n / s;   // coefficient of 1/x
    const double lin_y = term.x_n / (s * term.y_n);   // coefficient of y

    // -R_tilde = P*(-c_n + lin_y * y) + P*recip_w / x
    ConcaveExpr bound;
    bound.negated.affine = AffineExpr(-term.prelog * c_n);
    bound.negated.affine.constant += term.prelog * lin_y * term.y.constant;
    for (const auto& [idx, coeff] : term.y.coeffs)
        bound.negated.affine.add(idx, term.prelog * lin_y * coeff);
    bound.negated.add_reciprocal(term.prelog * recip_w, term.x);
    return bound;
}

ConvexExpr log_upper_bound(const LinearRatioTerm& term) {
    term.require_valid();
    const double s = term.x_n + term.y_n;
    const double c_n = std::log1p(term.x_n / term.y_n) - term.x_n / s;
    const double e = term.y_n / (2.0 * term.x_n * s);  // weight of (x^2 + x_n^2)/y

    ConvexExpr bound(AffineExpr(term.prelog * c_n));
    bound.add_quad_over_lin(term.prelog * e, term.x, term.y);
    bound.add_reciprocal(term.prelog * e * term.x_n * term.x_n, term.y);
    return bound;
}

ConvexExpr bilinear_upper_bound(int u_var, int v_var, double u_n, double v_n) {
    const double c = u_n - v_n;
    ConvexExpr bound(AffineExpr(0.25 * c * c));
    bound.affine.add(u_var, -0.5 * c);
    bound.affine.add(v_var, 0.5 * c);
    AffineExpr sum;
    sum.add(u_var, 1.0).add(v_var, 1.0);
    bound.add_square(0.25, std::move(sum));
    return bound;
}

namespace {

// Shared assembly: psi = gain_coeff * power_var, theta = 1 + sum of
// interference coefficients, expansion constants from the exact SINR parts.
LinearRatioTerm make_term(AffineExpr psi, AffineExpr theta, const SinrParts& at_expansion,
                          int tau_pilot, bool half_band, const SystemConfig& cfg,
                          double rate_scale) {
    LinearRatioTerm t;
    t.x = std::move(psi);
    t.y = std::move(theta);
    t.x_n = at_expansion.numerator;
    t.y_n = at_expansion.denominator;
    const double pre = static_cast<double>(cfg.tau_c - tau_pilot) / cfg.tau_c;
    const double band = half_band ? cfg.bandwidth_hz / 2.0 : cfg.bandwidth_hz;
    t.prelog = pre * band / std::log(2.0) / rate_scale;
    t.require_valid();
    return t;
}

}  // namespace

SurrogateTerms build_terms(const Allocation& a_n, const ChannelState& ch,
                           const SystemConfig& cfg, const VarLayout& lay,
                           double rate_scale) {
    SurrogateTerms terms;
    const int L = cfg.l, K = cfg.k;

    for (int l = 0; l < L; ++l) {
        AffineExpr psi;
        psi.add(lay.eta_d(l), cfg.rho_d * (cfg.m - L - K) * ch.sigma2_d[l]);
        AffineExpr theta(1.0);
        const double w = cfg.rho_d * (ch.beta_fl[l] - ch.sigma2_d[l]);
        for (int i = 0; i < L; ++i) theta.add(lay.eta_d(i), w);
        for (int i = 0; i < K; ++i) theta.add(lay.zeta_1(i), w);
        terms.s1_fl.push_back(make_term(std::move(psi), std::move(theta),
                                        sinr_s1_fl(a_n, ch, cfg, l), cfg.tau_dp, false, cfg,
                                        rate_scale));
    }

    for (int k = 0; k < K; ++k) {
        AffineExpr psi;
        psi.add(lay.zeta_1(k), cfg.rho_d * (cfg.m - L - K) * ch.sigma2_1[k]);
        AffineExpr theta(1.0);
        const double w = cfg.rho_d * (ch.beta_nfl[k] - ch.sigma2_1[k]);
        for (int i = 0; i < K; ++i) theta.add(lay.zeta_1(i), w);
        for (int i = 0; i < L; ++i) theta.add(lay.eta_d(i), w);
        terms.s1_nfl.push_back(make_term(std::move(psi), std::move(theta),
                                         sinr_s1_nfl(a_n, ch, cfg, k), cfg.tau_1p, false, cfg,
                                         rate_scale));
    }

    for (int k = 0; k < K; ++k) {
        AffineExpr psi;
        psi.add(lay.zeta_2(k), cfg.rho_d * (cfg.m - K) * ch.sigma2_2[k]);
        AffineExpr theta(1.0);
        const double w = cfg.rho_d * (ch.beta_nfl[k] - ch.sigma2_2[k]);
        for (int i = 0; i < K; ++i) theta.add(lay.zeta_2(i), w);
        terms.s2.push_back(make_term(std::move(psi), std::move(theta), sinr_s2(a_n, ch, cfg, k),
                                     cfg.tau_2p, false, cfg, rate_scale));
    }

    for (int l = 0; l < L; ++l) {
        AffineExpr psi;
        psi.add(lay.eta_u(l), cfg.rho_u * (cfg.m - L) * ch.sigma2_u[l]);
        AffineExpr theta(1.0);
        for (int i = 0; i < L; ++i)
            theta.add(lay.eta_u(i), cfg.rho_u * (ch.beta_fl[i] - ch.sigma2_u[i]));
        terms.s3_ul.push_back(make_term(std::move(psi), std::move(theta),
                                        sinr_s3_ul(a_n, ch, cfg, l), cfg.tau_up, true, cfg,
                                        rate_scale));
    }

    for (int k = 0; k < K; ++k) {
        AffineExpr psi;
        psi.add(lay.zeta_3(k), cfg.rho_d * (cfg.m - K) * ch.sigma2_3[k]);
        AffineExpr theta(1.0);
        const double w = cfg.rho_d * (ch.beta_nfl[k] - ch.sigma2_3[k]);
        for (int i = 0; i < K; ++i) theta.add(lay.zeta_3(i), w);
        terms.s3_dl.push_back(make_term(std::move(psi), std::move(theta),
                                        sinr_s3_dl(a_n, ch, cfg, k), cfg.tau_3p, true, cfg,
                                        rate_scale));
    }
    return terms;
}

}  // namespace fedmimo
