#include "hho/eigenvalue.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hho/assembly.hpp"
#include "hho/linear_solvers.hpp"

namespace hho {

EigenvalueResult smallest_eigenvalue(const HhoSpace& space, double tol, int max_iter)
{
    if (!(tol > 0.0) || max_iter < 1)
        throw std::invalid_argument("eigenvalue iteration needs tol > 0 and max_iter >= 1");
    const SparseMatrix K = assemble_stiffness(space);
    const SparseMatrix mass = assemble_cell_mass(space);
    SparseDirectSolver solver;
    solver.compute(K);

    const auto ncu = static_cast<Eigen::Index>(space.dofs().n_cell_unknowns());
    const auto n = K.rows();
    // Start from the projection of the constant 1: it overlaps the ground state.
    Vector w = Vector::Zero(n);
    const auto per_cell = static_cast<Eigen::Index>(space.dofs().per_cell());
    for (std::size_t c = 0; c < space.mesh().n_cells(); ++c)
        w.segment(static_cast<Eigen::Index>(space.dofs().cell_offset(c)), per_cell) =
            project_cell(space.cell_basis(c), space.cell_rule(c), [](const Point&) { return 1.0; },
                         space.n_cell_unknowns_per_cell());
    w /= std::sqrt(w.dot(mass * w));

    EigenvalueResult result;
    double lambda = 0.0;
    for (int it = 1; it <= max_iter; ++it) {
        const Vector mw = mass * w;
        Vector z = solver.solve(mw);
        z.tail(n - ncu).setZero();
        const double zmz = z.dot(mass * z);
        const double next = z.dot(mw) / zmz;
        w = z / std::sqrt(zmz);
        result.iterations = it;
        result.residual = std::abs(next - lambda) / std::abs(next);
        lambda = next;
        if (result.residual <= tol) {
            result.converged = true;
            break;
        }
    }
    result.lambda = lambda;
    return result;
}

double discrete_solution_bound(double lambda, double m0, double lipschitz_a, double load_norm)
{
    const double coercivity = m0 - lipschitz_a / lambda;
    if (!(lambda > 0.0) || !(coercivity > 0.0)) {
        std::ostringstream os;
        os << "bound undefined: m0 - a/lambda = " << coercivity << " with lambda = " << lambda;
        throw std::invalid_argument(os.str());
    }
    return load_norm / (std::sqrt(lambda) * coercivity);
}

} // namespace hho
