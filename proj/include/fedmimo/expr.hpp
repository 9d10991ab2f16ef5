#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace fedmimo {

/// Sparse affine function c + sum_i a_i * x_i of the program variables.
struct AffineExpr {
    double constant = 0.0;
    std::vector<std::pair<int, double>> coeffs;

    AffineExpr() = default;
    explicit AffineExpr(double c) : constant(c) {}

    /// Adds w * x_var (merging with an existing coefficient on x_var).
    AffineExpr& add(int var, double w);

    double value(std::span<const double> x) const;
    void add_gradient(double w, Eigen::VectorXd& grad) const;
};

/// Convex expression built from the four term families the surrogate
/// bounds need:
///
///   affine  +  sum w/den  +  sum w*arg^2  +  sum w*num^2/den
///
/// with every weight w > 0 and every denominator required positive on the
/// domain. This covers the log-bound surrogates (affine + reciprocal), the
/// bilinear majorant (square) and the quadratic-over-linear upper bound,
/// and keeps gradients and Hessians exact and cheap (rank-one pieces).
class ConvexExpr {
  public:
    struct Reciprocal {
        double weight;   // > 0
        AffineExpr den;  // must stay > 0
    };
    struct Square {
        double weight;  // > 0
        AffineExpr arg;
    };
    struct QuadOverLin {
        double weight;   // > 0
        AffineExpr num;
        AffineExpr den;  // must stay > 0
    };

    AffineExpr affine;

    ConvexExpr() = default;
    explicit ConvexExpr(AffineExpr a) : affine(std::move(a)) {}

    ConvexExpr& add_reciprocal(double weight, AffineExpr den);
    ConvexExpr& add_square(double weight, AffineExpr arg);
    ConvexExpr& add_quad_over_lin(double weight, AffineExpr num, AffineExpr den);

    /// Value at x, or nullopt when x is outside the domain (a denominator
    /// is not strictly positive).
    std::optional<double> value(std::span<const double> x) const;

    /// True when every denominator is strictly positive at x.
    bool in_domain(std::span<const double> x) const;

    /// Accumulates w * grad(expr)(x) into grad. x must be in the domain.
    void add_gradient(std::span<const double> x, double w, Eigen::VectorXd& grad) const;

    /// Accumulates w * hess(expr)(x) into hess. x must be in the domain.
    void add_hessian(std::span<const double> x, double w, Eigen::MatrixXd& hess) const;

    bool is_affine() const {
        return reciprocals_.empty() && squares_.empty() && quads_.empty();
    }

    /// Sorted unique indices of every variable the expression touches.
    std::vector<int> support() const;

    const std::vector<Reciprocal>& reciprocals() const { return reciprocals_; }
    const std::vector<Square>& squares() const { return squares_; }
    const std::vector<QuadOverLin>& quads() const { return quads_; }

    /// Term-by-term human-readable dump, one line per term.
    void print(std::ostream& os, const std::vector<std::string>& var_names) const;

  private:
    std::vector<Reciprocal> reciprocals_;
    std::vector<Square> squares_;
    std::vector<QuadOverLin> quads_;
};

}  // namespace fedmimo
