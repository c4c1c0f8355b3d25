#pragma once

#include <string>
#include <vector>

#include "hho/hybrid_field.hpp"
#include "hho/linear_solvers.hpp"
#include "hho/system.hpp"

namespace hho {

struct NewtonOptions {
    double tol = 1e-12;
    int max_iter = 20;
    SolverPath path = SolverPath::smw_condensed;
};

struct NewtonReport {
    int iterations = 0;
    std::vector<double> step_norms;     // ||dalpha||_{a,h} + |dd| per iteration
    std::vector<double> residual_norms; // max-norm of F before each step, then at the final state
    bool converged = false;
    double initial_d = 0.0;
    double final_d = 0.0;
    double seconds = 0.0;
    std::vector<std::string> warnings;
};

struct NewtonResult {
    Vector alpha; // free unknowns
    double d = 0.0;
    HybridField u;
    NewtonReport report;
};

/// Poisson initial guess: a_h(u0, v) = (f(., 0), v_T), d0 = ||grad R_h u0||^2.
/// Returns the free-unknown vector.
Vector poisson_initial_guess(const KirchhoffSystem& system);

/// Newton's method on (alpha, d) from the Poisson initial guess, stopping when
/// ||dalpha||_{a,h} + |dd| <= tol. A non-converged run is reported, not thrown.
NewtonResult newton_solve(const KirchhoffSystem& system, const NewtonOptions& options = {});

/// Convenience overload building the system.
NewtonResult newton_solve(const HhoSpace& space, const ProblemSpec& problem, const NewtonOptions& options = {});

/// Superlinear decrease of the step norms: among the steps larger than `floor`
/// (the stopping tolerance; smaller steps sit at round-off), there are at least
/// three and the contraction ratios s_{n+1}/s_n strictly decrease.
bool superlinear_decrease(const std::vector<double>& step_norms, double floor);

} // namespace hho
