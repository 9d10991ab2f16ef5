#include "fedmimo/expr.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace fedmimo {

AffineExpr& AffineExpr::add(int var, double w) {
    for (auto& [idx, coeff] : coeffs) {
        if (idx == var) {
            coeff += w;
            return *this;
        }
    }
    coeffs.emplace_back(var, w);
    return *this;
}

double AffineExpr::value(std::span<const double> x) const {
    double v = constant;
    for (const auto& [idx, coeff] : coeffs) v += coeff * x[idx];
    return v;
}

void AffineExpr::add_gradient(double w, Eigen::VectorXd& grad) const {
    for (const auto& [idx, coeff] : coeffs) grad[idx] += w * coeff;
}

ConvexExpr& ConvexExpr::add_reciprocal(double weight, AffineExpr den) {
    if (weight <= 0) throw std::invalid_argument("reciprocal weight must be positive");
    reciprocals_.push_back({weight, std::move(den)});
    return *this;
}

ConvexExpr& ConvexExpr::add_square(double weight, AffineExpr arg) {
    if (weight <= 0) throw std::invalid_argument("square weight must be positive");
    squares_.push_back({weight, std::move(arg)});
    return *this;
}

ConvexExpr& ConvexExpr::add_quad_over_lin(double weight, AffineExpr num, AffineExpr den) {
    if (weight <= 0) throw std::invalid_argument("quad-over-lin weight must be positive");
    quads_.push_back({weight, std::move(num), std::move(den)});
    return *this;
}

bool ConvexExpr::in_domain(std::span<const double> x) const {
    for (const auto& r : reciprocals_)
        if (r.den.value(x) <= 0) return false;
    for (const auto& q : quads_)
        if (q.den.value(x) <= 0) return false;
    return true;
}

std::optional<double> ConvexExpr::value(std::span<const double> x) const {
    double v = affine.value(x);
    for (const auto& r : reciprocals_) {
        const double d = r.den.value(x);
        if (d <= 0) return std::nullopt;
        v += r.weight / d;
    }
    for (const auto& s : squares_) {
        const double a = s.arg.value(x);
        v += s.weight * a * a;
    }
    for (const auto& q : quads_) {
        const double d = q.den.value(x);
        if (d <= 0) return std::nullopt;
        const double n = q.num.value(x);
        v += q.weight * n * n / d;
    }
    return v;
}

void ConvexExpr::add_gradient(std::span<const double> x, double w, Eigen::VectorXd& grad) const {
    affine.add_gradient(w, grad);
    for (const auto& r : reciprocals_) {
        const double d = r.den.value(x);
        r.den.add_gradient(-w * r.weight / (d * d), grad);
    }
    for (const auto& s : squares_) {
        const double a = s.arg.value(x);
        s.arg.add_gradient(w * 2.0 * s.weight * a, grad);
    }
    for (const auto& q : quads_) {
        const double d = q.den.value(x);
        const double n = q.num.value(x);
        q.num.add_gradient(w * 2.0 * q.weight * n / d, grad);
        q.den.add_gradient(-w * q.weight * n * n / (d * d), grad);
    }
}

namespace {

// hess += w * a a^T restricted to the sparse support of a.
void add_outer(const AffineExpr& a, double w, Eigen::MatrixXd& hess) {
    for (const auto& [i, ci] : a.coeffs)
        for (const auto& [j, cj] : a.coeffs) hess(i, j) += w * ci * cj;
}

// hess += w * (a b^T + b a^T)
void add_cross(const AffineExpr& a, const AffineExpr& b, double w, Eigen::MatrixXd& hess) {
    for (const auto& [i, ci] : a.coeffs)
        for (const auto& [j, cj] : b.coeffs) {
            hess(i, j) += w * ci * cj;
            hess(j, i) += w * ci * cj;
        }
}

}  // namespace

void ConvexExpr::add_hessian(std::span<const double> x, double w, Eigen::MatrixXd& hess) const {
    for (const auto& r : reciprocals_) {
        const double d = r.den.value(x);
        add_outer(r.den, w * 2.0 * r.weight / (d * d * d), hess);
    }
    for (const auto& s : squares_) add_outer(s.arg, w * 2.0 * s.weight, hess);
    for (const auto& q : quads_) {
        // hessian of n^2/d: 2/d n'n'^T - 2n/d^2 (n'd'^T + d'n'^T) + 2n^2/d^3 d'd'^T
        const double d = q.den.value(x);
        const double n = q.num.value(x);
        add_outer(q.num, w * 2.0 * q.weight / d, hess);
        add_cross(q.num, q.den, -w * 2.0 * q.weight * n / (d * d), hess);
        add_outer(q.den, w * 2.0 * q.weight * n * n / (d * d * d), hess);
    }
}

std::vector<int> ConvexExpr::support() const {
    std::vector<int> out;
    auto collect = [&out](const AffineExpr& a) {
        for (const auto& [idx, coeff] : a.coeffs)
            if (coeff != 0.0) out.push_back(idx);
    };
    collect(affine);
    for (const auto& r : reciprocals_) collect(r.den);
    for (const auto& s : squares_) collect(s.arg);
    for (const auto& q : quads_) {
        collect(q.num);
        collect(q.den);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

void print_affine(std::ostream& os, const AffineExpr& a, const std::vector<std::string>& names) {
    os << a.constant;
    for (const auto& [idx, coeff] : a.coeffs) {
        const char* name = idx < static_cast<int>(names.size()) ? names[idx].c_str() : "?";
        os << (coeff >= 0 ? " + " : " - ") << std::abs(coeff) << "*" << name;
    }
}

}  // namespace

void ConvexExpr::print(std::ostream& os, const std::vector<std::string>& names) const {
    os << "  affine: ";
    print_affine(os, affine, names);
    os << "\n";
    for (const auto& r : reciprocals_) {
        os << "  + " << r.weight << " / (";
        print_affine(os, r.den, names);
        os << ")\n";
    }
    for (const auto& s : squares_) {
        os << "  + " << s.weight << " * (";
        print_affine(os, s.arg, names);
        os << ")^2\n";
    }
    for (const auto& q : quads_) {
        os << "  + " << q.weight << " * (";
        print_affine(os, q.num, names);
        os << ")^2 / (";
        print_affine(os, q.den, names);
        os << ")\n";
    }
}

}  // namespace fedmimo
