#pragma once

#include <string>
#include <vector>

#include "fedmimo/channel.hpp"
#include "fedmimo/config.hpp"
#include "fedmimo/expr.hpp"
#include "fedmimo/rates.hpp"

namespace fedmimo {

/// Index map for the decision vector of the epigraph-form program:
/// power coefficients and f first, then the auxiliary variables.
struct VarLayout {
    int l = 0, k = 0;

    int eta_d(int i) const { return i; }
    int zeta_1(int i) const { return l + i; }
    int zeta_2(int i) const { return l + k + i; }
    int eta_u(int i) const { return l + 2 * k + i; }
    int zeta_3(int i) const { return 2 * l + 2 * k + i; }
    int f() const { return 2 * l + 3 * k; }

    int t() const { return f() + 1; }
    int t_q() const { return f() + 2; }
    int z() const { return f() + 3; }
    int r_d() const { return f() + 4; }
    int r_u() const { return f() + 5; }
    int a1() const { return f() + 6; }
    int a2() const { return f() + 7; }
    int a3() const { return f() + 8; }
    int r1(int i) const { return f() + 9 + i; }
    int r2(int i) const { return f() + 9 + k + i; }
    int r3(int i) const { return f() + 9 + 2 * k + i; }
    int rt_d() const { return f() + 9 + 3 * k; }
    int rt_u() const { return f() + 10 + 3 * k; }

    int size() const { return 2 * l + 6 * k + 11; }

    std::vector<std::string> names() const;
};

/// One rate expressed as prelog * ln(1 + x/y): x and y are the affine SINR
/// numerator and denominator in the program variables, (x_n, y_n) their
/// values at the expansion point. prelog already carries the bandwidth,
/// the pilot-overhead factor and the 1/ln2 conversion.
struct LinearRatioTerm {
    AffineExpr x;  ///< SINR numerator (affine, nonnegative coefficients)
    AffineExpr y;  ///< SINR denominator (affine, positive constant)
    double x_n = 0.0;
    double y_n = 0.0;
    double prelog = 0.0;

    /// Exact rate value prelog * ln(1 + x_n/y_n) at the expansion point.
    double rate_at_expansion() const;

    /// Throws std::invalid_argument unless x_n > 0 and y_n > 0 (the
    /// expansion point must be strictly interior).
    void require_valid() const;
};

/// Concave function represented by its convex negation; lets the concave
/// rate lower bounds ride on the same term machinery as everything else.
struct ConcaveExpr {
    ConvexExpr negated;

    std::optional<double> value(std::span<const double> x) const {
        auto v = negated.value(x);
        if (!v) return std::nullopt;
        return -*v;
    }
};

/// Concave lower bound on prelog*ln(1 + x/y) around (x_n, y_n):
///
///   ln(1+x/y) >= ln(1+x_n/y_n) + 2x_n/(x_n+y_n)
///                - x_n^2 / ((x_n+y_n) x) - x_n y / ((x_n+y_n) y_n)
///
/// Tight (value and gradient) at the expansion point.
ConcaveExpr log_lower_bound(const LinearRatioTerm& term);

/// Convex upper bound on prelog*ln(1 + x/y) around (x_n, y_n):
///
///   ln(1+x/y) <= ln(1+x_n/y_n) + y_n/(x_n+y_n) *
///                ((x^2 + x_n^2)/(2 x_n y) - x_n/y_n)
///
/// Tight (value and gradient) at the expansion point.
ConvexExpr log_upper_bound(const LinearRatioTerm& term);

/// Convex majorant of the product u*v for u, v >= 0:
///
///   u*v <= 1/4 [ (u+v)^2 - 2(u_n - v_n)(u - v) + (u_n - v_n)^2 ]
///
/// Equal to u_n*v_n at the expansion point.
ConvexExpr bilinear_upper_bound(int u_var, int v_var, double u_n, double v_n);

/// Scalar forms of the three bounds, shared by tests and the domination
/// sweeps. Natural log, unit prelog.
double log_lower_bound_value(double x, double y, double x_n, double y_n);
double log_upper_bound_value(double x, double y, double x_n, double y_n);
double bilinear_upper_bound_value(double u, double v, double u_n, double v_n);

/// The full set of rate terms of the program, expanded at one allocation.
struct SurrogateTerms {
    std::vector<LinearRatioTerm> s1_fl;   ///< R_d,l terms (length L)
    std::vector<LinearRatioTerm> s3_ul;   ///< R_u,l terms (length L)
    std::vector<LinearRatioTerm> s1_nfl;  ///< R_1,k terms (length K)
    std::vector<LinearRatioTerm> s2;      ///< R_2,k terms (length K)
    std::vector<LinearRatioTerm> s3_dl;   ///< R_3,k terms (length K)
};

/// Builds every LinearRatioTerm with expansion constants taken from a_n.
/// rate_scale divides the prelog factors so the program can work in
/// scaled rate units (pass 1.0 for bit/s).
/// Requires a_n strictly positive on all power coefficients.
SurrogateTerms build_terms(const Allocation& a_n, const ChannelState& ch,
                           const SystemConfig& cfg, const VarLayout& lay,
                           double rate_scale = 1.0);

}  // namespace fedmimo
