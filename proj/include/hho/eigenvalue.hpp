#pragma once

#include "hho/problem.hpp"
#include "hho/space.hpp"

namespace hho {

struct EigenvalueResult {
    double lambda = 0.0;
    int iterations = 0;
    /// Relative change of lambda over the last iteration.
    double residual = 0.0;
    bool converged = false;
};

/// Smallest lambda of a_h(w, v) = lambda (w_T, v_T) over the free unknowns,
/// by inverse power iteration on the face-condensed cell problem.
/// Stagnation is reported through `converged` and `residual`.
EigenvalueResult smallest_eigenvalue(const HhoSpace& space, double tol = 1e-9, int max_iter = 1000);

/// R_{1,h} = ||f(., 0)|| / (sqrt(lambda) (m0 - a / lambda)). Throws when m0 <= a / lambda.
double discrete_solution_bound(double lambda, double m0, double lipschitz_a, double load_norm);

} // namespace hho
