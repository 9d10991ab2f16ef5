#include "fedmimo/cvxsolve.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace fedmimo {

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::optimal: return "optimal";
        case SolveStatus::infeasible: return "infeasible";
        case SolveStatus::max_iter: return "max-iter";
    }
    return "unknown";
}

void ConvexProgram::print(std::ostream& os) const {
    os << "maximize " << var_names[objective_var] << "\n";
    os << "subject to (" << constraints.size() << " constraints, expression <= 0):\n";
    for (const auto& c : constraints) {
        os << "[" << c.tag << "]\n";
        c.expr.print(os, var_names);
    }
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Evaluated {
    bool interior = false;
    std::vector<double> slack;  // -g_i(x), valid when interior
};

Evaluated eval_slacks(const ConvexProgram& p, std::span<const double> x) {
    Evaluated e;
    e.slack.resize(p.constraints.size());
    for (std::size_t i = 0; i < p.constraints.size(); ++i) {
        const auto v = p.constraints[i].expr.value(x);
        if (!v || *v >= 0.0) return e;  // on or outside the boundary
        e.slack[i] = -*v;
    }
    e.interior = true;
    return e;
}

double barrier_value(double mu, int obj, std::span<const double> x,
                     const std::vector<double>& slack) {
    double phi = -x[obj];
    for (double s : slack) phi -= mu * std::log(s);
    return phi;
}

}  // namespace

Solution solve(const ConvexProgram& p, std::span<const double> start, SolveTolerances tol,
               std::ostream* trace) {
    const int n = p.num_vars();
    const int m = static_cast<int>(p.constraints.size());
    if (static_cast<int>(start.size()) != n)
        throw std::invalid_argument("solve: start vector size mismatch");

    std::vector<double> x(start.begin(), start.end());
    {
        Evaluated e = eval_slacks(p, x);
        if (!e.interior) {
            for (std::size_t i = 0; i < p.constraints.size(); ++i) {
                const auto v = p.constraints[i].expr.value(x);
                if (!v || *v >= 0.0)
                    throw std::invalid_argument("solve: start point not strictly feasible at [" +
                                                p.constraints[i].tag + "]");
            }
        }
    }

    Solution best;
    best.x = x;
    best.objective = x[p.objective_var];
    best.status = SolveStatus::max_iter;

    Eigen::VectorXd grad(n), cgrad(n), step(n);
    Eigen::MatrixXd hess(n, n);
    cgrad.setZero();

    // Constraint gradients are sparse; precomputing supports keeps the
    // rank-one Hessian updates proportional to support size, not n^2.
    std::vector<std::vector<int>> supports(m);
    for (int i = 0; i < m; ++i) supports[i] = p.constraints[i].expr.support();

    double mu = tol.mu0 > 0 ? tol.mu0 : 1.0;
    const int max_outer = 64;
    const int max_inner = 80;
    bool breakdown = false;
    int total_newton = 0;

    for (int outer = 0; outer < max_outer && !breakdown; ++outer) {
        // Intermediate stages only need approximate centering; the final
        // stage (which defines the returned point) is solved tightly.
        const bool final_stage = m * mu <= tol.opt;
        const double inner_tol = final_stage ? 1e-11 : 1e-7;
        int inner = 0;
        double grad_norm = kInf;
        for (; inner < max_inner; ++inner) {
            Evaluated e = eval_slacks(p, x);
            if (!e.interior) {
                breakdown = true;
                break;
            }
            grad.setZero();
            grad[p.objective_var] = -1.0;
            hess.setZero();
            for (int i = 0; i < m; ++i) {
                const auto& expr = p.constraints[i].expr;
                const auto& sup = supports[i];
                const double s = e.slack[i];
                for (int idx : sup) cgrad[idx] = 0.0;
                expr.add_gradient(x, 1.0, cgrad);
                const double w1 = mu / s;
                const double w2 = mu / (s * s);
                for (int a : sup) {
                    const double ga = cgrad[a];
                    grad[a] += w1 * ga;
                    for (int b : sup) hess(a, b) += w2 * ga * cgrad[b];
                }
                expr.add_hessian(x, mu / s, hess);
                for (int idx : sup) cgrad[idx] = 0.0;
            }
            grad_norm = grad.lpNorm<Eigen::Infinity>();

            // Newton direction with escalating ridge on LLT failure.
            double ridge = 0.0;
            bool solved = false;
            for (int attempt = 0; attempt < 6 && !solved; ++attempt) {
                Eigen::MatrixXd h = hess;
                if (ridge > 0.0) h.diagonal().array() += ridge;
                Eigen::LLT<Eigen::MatrixXd> llt(h);
                if (llt.info() == Eigen::Success) {
                    step = llt.solve(-grad);
                    solved = std::isfinite(step.lpNorm<Eigen::Infinity>());
                }
                ridge = ridge == 0.0 ? 1e-10 * (1.0 + hess.diagonal().maxCoeff()) : ridge * 100.0;
            }
            if (!solved) {
                breakdown = true;
                break;
            }

            const double decrement2 = -grad.dot(step);
            if (decrement2 * 0.5 <= inner_tol * (1.0 + std::abs(x[p.objective_var]))) break;

            // Largest step keeping strict feasibility, then Armijo backtracking.
            const double phi0 = barrier_value(mu, p.objective_var, x, e.slack);
            double alpha = 1.0;
            std::vector<double> cand(n);
            bool accepted = false;
            for (int ls = 0; ls < 70; ++ls) {
                for (int j = 0; j < n; ++j) cand[j] = x[j] + alpha * step[j];
                Evaluated ce = eval_slacks(p, cand);
                if (ce.interior) {
                    const double phi = barrier_value(mu, p.objective_var, cand, ce.slack);
                    if (phi <= phi0 - 1e-4 * alpha * decrement2) {
                        x = cand;
                        accepted = true;
                        break;
                    }
                }
                alpha *= 0.5;
            }
            if (!accepted) break;  // cannot make progress at this mu
            ++total_newton;
        }

        if (trace) {
            Evaluated e = eval_slacks(p, x);
            double min_slack = kInf;
            for (double s : e.slack) min_slack = std::min(min_slack, s);
            *trace << "barrier step " << outer << ": mu=" << mu << " newton=" << inner
                   << " grad_inf=" << grad_norm << " min_slack=" << min_slack << "\n";
        }

        if (final_stage) {
            best.x = x;
            best.objective = x[p.objective_var];
            best.kkt_residual = grad_norm;
            best.status = breakdown ? SolveStatus::max_iter : SolveStatus::optimal;
            best.barrier_steps = outer + 1;
            best.newton_steps = total_newton;
            double worst = -kInf;
            for (const auto& c : p.constraints) {
                const auto v = c.expr.value(best.x);
                worst = std::max(worst, v ? *v : kInf);
            }
            best.max_violation = worst;
            return best;
        }
        mu *= 0.1;
    }

    // Breakdown or outer-iteration cap: report the best iterate honestly.
    best.x = x;
    best.objective = x[p.objective_var];
    best.barrier_steps = max_outer;
    best.newton_steps = total_newton;
    double worst = -kInf;
    for (const auto& c : p.constraints) {
        const auto v = c.expr.value(best.x);
        worst = std::max(worst, v ? *v : kInf);
    }
    best.max_violation = worst;
    best.status = SolveStatus::max_iter;
    return best;
}

}  // namespace fedmimo
