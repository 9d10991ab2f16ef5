#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fedmimo/expr.hpp"

namespace fedmimo {

/// Smooth convex program: maximize one variable subject to a list of
/// convex expressions required <= 0. Variable bounds are ordinary
/// constraints; every variable is expected to have at least a lower bound
/// so the Newton system stays positive definite.
struct ConvexProgram {
    std::vector<std::string> var_names;
    int objective_var = 0;  ///< maximize x[objective_var]

    struct Constraint {
        ConvexExpr expr;
        std::string tag;  ///< stable identifier for diagnostics
    };
    std::vector<Constraint> constraints;

    int num_vars() const { return static_cast<int>(var_names.size()); }

    /// Term-by-term dump of the whole program (constraint per block).
    void print(std::ostream& os) const;
};

struct SolveTolerances {
    double feas = 1e-8;  ///< allowed relative constraint violation
    double opt = 1e-7;   ///< duality-gap proxy m*mu at termination
    double mu0 = 1.0;    ///< initial barrier parameter; < 1 suits warm starts
};

enum class SolveStatus { optimal, infeasible, max_iter };

const char* to_string(SolveStatus s);

struct Solution {
    std::vector<double> x;
    double objective = 0.0;
    double kkt_residual = 0.0;    ///< inf-norm of the barrier gradient at exit
    double max_violation = 0.0;   ///< max over constraints of g_i(x) (<= 0 when interior)
    SolveStatus status = SolveStatus::max_iter;
    int barrier_steps = 0;
    int newton_steps = 0;
};

/// Primal log-barrier solver with damped Newton inner iterations.
///
/// The start point must satisfy every constraint strictly; this is the
/// caller's contract (the outer loop always has an interior point in hand)
/// and a std::invalid_argument otherwise. The barrier parameter starts at
/// 1 and shrinks tenfold per outer step until m*mu <= tol.opt. A singular
/// Newton system that regularization cannot rescue ends the solve at the
/// best iterate with status max_iter.
///
/// `trace`, when non-null, receives one line per outer step: mu, Newton
/// iteration count, gradient norm and worst constraint slack.
Solution solve(const ConvexProgram& p, std::span<const double> start,
               SolveTolerances tol = {}, std::ostream* trace = nullptr);

}  // namespace fedmimo
