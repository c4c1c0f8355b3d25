#include "hho/newton.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "hho/errors.hpp"

namespace hho {

Vector poisson_initial_guess(const KirchhoffSystem& system)
{
    SparseDirectSolver solver;
    solver.compute(system.stiffness());
    return solver.solve(system.load_vector(Vector::Zero(system.n_free())));
}

NewtonResult newton_solve(const KirchhoffSystem& system, const NewtonOptions& options)
{
    if (!(options.tol > 0.0))
        throw std::invalid_argument("Newton tolerance must be positive");
    if (options.max_iter < 1)
        throw std::invalid_argument("Newton needs max_iter >= 1");

    const auto start = std::chrono::steady_clock::now();
    const Eigen::Index n = system.n_free();
    NewtonResult result;
    NewtonReport& report = result.report;

    Vector alpha = poisson_initial_guess(system);
    double d = system.nonlocal(alpha);
    report.initial_d = d;

    for (int it = 0; it < options.max_iter; ++it) {
        const Vector F = system.residual(alpha, d);
        report.residual_norms.push_back(F.cwiseAbs().maxCoeff());
        const JacobianBlocks jac = system.jacobian(alpha, d);
        const Vector step = solve_newton_system(system.space(), jac, -F, options.path, &report.warnings);
        const Vector dalpha = step.head(n);
        const double dd = step[n];
        alpha += dalpha;
        d += dd;
        const double norm = std::sqrt(std::max(0.0, dalpha.dot(system.stiffness() * dalpha))) + std::abs(dd);
        report.step_norms.push_back(norm);
        report.iterations = it + 1;
        if (!std::isfinite(norm))
            throw SolverError("Newton step is not finite at iteration " + std::to_string(it + 1));
        if (norm <= options.tol) {
            report.converged = true;
            break;
        }
    }
    report.residual_norms.push_back(system.residual(alpha, d).cwiseAbs().maxCoeff());
    report.final_d = d;
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    result.u = HybridField::from_free(system.space(), alpha);
    result.alpha = std::move(alpha);
    result.d = d;
    return result;
}

NewtonResult newton_solve(const HhoSpace& space, const ProblemSpec& problem, const NewtonOptions& options)
{
    const KirchhoffSystem system(space, problem);
    return newton_solve(system, options);
}

bool superlinear_decrease(const std::vector<double>& step_norms, double floor)
{
    std::vector<double> s;
    for (double x : step_norms)
        if (x > floor)
            s.push_back(x);
    if (s.size() < 3)
        return false;
    for (std::size_t i = 2; i < s.size(); ++i)
        if (s[i] / s[i - 1] >= s[i - 1] / s[i - 2])
            return false;
    return true;
}

} // namespace hho
