#include "hho/linear_solvers.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/IterativeLinearSolvers>

#include "hho/errors.hpp"

namespace hho {

std::string_view solver_path_name(SolverPath path) noexcept
{
    switch (path) {
    case SolverPath::dense: return "dense";
    case SolverPath::smw_sparse: return "smw-sparse";
    case SolverPath::smw_condensed: return "smw-condensed";
    }
    return "?";
}

SolverPath parse_solver_path(std::string_view name)
{
    for (auto p : {SolverPath::dense, SolverPath::smw_sparse, SolverPath::smw_condensed})
        if (solver_path_name(p) == name)
            return p;
    throw std::invalid_argument("unknown solver path '" + std::string(name) + "'");
}

void SparseDirectSolver::compute(const JacobianBlocks& jac) { compute(jac.A); }

void SparseDirectSolver::compute(const SparseMatrix& A)
{
    warnings_.clear();
    use_lu_ = false;
    if (A.rows() == 0)
        return;
    ldlt_.compute(A);
    if (ldlt_.info() == Eigen::Success) {
        const auto& diag = ldlt_.vectorD();
        const double scale = diag.cwiseAbs().maxCoeff();
        if (std::isfinite(scale) && diag.cwiseAbs().minCoeff() > 1e-14 * scale)
            return;
    }
    warnings_.push_back("sparse LDL^T unreliable, falling back to sparse LU");
    use_lu_ = true;
    lu_.compute(A);
    if (lu_.info() != Eigen::Success)
        throw SolverError("sparse LU factorization failed: matrix is singular");
}

Vector SparseDirectSolver::solve(const Vector& rhs) const
{
    if (rhs.size() == 0)
        return Vector(0);
    Vector x = use_lu_ ? Vector(lu_.solve(rhs)) : Vector(ldlt_.solve(rhs));
    if (!x.allFinite())
        throw SolverError("sparse direct solve produced non-finite values");
    return x;
}

void ConjugateGradientSolver::compute(const JacobianBlocks& jac)
{
    warnings_.clear();
    A_ = jac.A;
}

Vector ConjugateGradientSolver::solve(const Vector& rhs) const
{
    if (rhs.size() == 0)
        return Vector(0);
    Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper, Eigen::IncompleteCholesky<double>> cg;
    cg.setTolerance(tolerance_);
    if (max_iterations_ > 0)
        cg.setMaxIterations(max_iterations_);
    cg.compute(A_);
    if (cg.info() != Eigen::Success)
        throw SolverError("conjugate gradient preconditioner setup failed");
    Vector x = cg.solve(rhs);
    if (cg.info() != Eigen::Success || !x.allFinite()) {
        std::ostringstream os;
        os << "conjugate gradient did not converge (" << cg.iterations() << " iterations, error " << cg.error() << ")";
        throw SolverError(os.str());
    }
    return x;
}

Vector bordered_solve(const LinearSolver& solver, const Vector& b, const Vector& c, double delta, const Vector& rhs)
{
    const Eigen::Index n = b.size();
    if (c.size() != n || rhs.size() != n + 1)
        throw std::invalid_argument("bordered system blocks have inconsistent sizes");
    const Vector z1 = solver.solve(rhs.head(n));
    const Vector z2 = solver.solve(b);
    const double schur = c.dot(z2) - delta;
    if (!(std::abs(schur) >= 1e-14)) {
        std::ostringstream os;
        os << "singular bordered system: Schur scalar c.z2 - delta = " << schur;
        throw SolverError(os.str());
    }
    Vector out(n + 1);
    const double y = (c.dot(z1) - rhs[n]) / schur;
    out.head(n) = z1 - y * z2;
    out[n] = y;
    return out;
}

Vector dense_bordered_solve(const JacobianBlocks& jac, const Vector& rhs)
{
    const Eigen::Index n = jac.size();
    if (rhs.size() != n + 1)
        throw std::invalid_argument("right-hand side has the wrong length");
    Matrix full(n + 1, n + 1);
    full.topLeftCorner(n, n) = Matrix(jac.A);
    full.topRightCorner(n, 1) = jac.b;
    full.bottomLeftCorner(1, n) = jac.c.transpose();
    full(n, n) = jac.delta;
    Eigen::FullPivLU<Matrix> lu(full);
    if (!lu.isInvertible())
        throw SolverError("singular bordered system (dense LU)");
    return lu.solve(rhs);
}

Vector solve_newton_system(const HhoSpace& space, const JacobianBlocks& jac, const Vector& rhs, SolverPath path,
                           std::vector<std::string>* warnings)
{
    if (path == SolverPath::dense)
        return dense_bordered_solve(jac, rhs);
    std::unique_ptr<LinearSolver> solver;
    if (path == SolverPath::smw_sparse)
        solver = std::make_unique<SparseDirectSolver>();
    else
        solver = std::make_unique<StaticCondensationSolver>(space);
    solver->compute(jac);
    if (warnings != nullptr)
        warnings->insert(warnings->end(), solver->warnings().begin(), solver->warnings().end());
    return bordered_solve(*solver, jac.b, jac.c, jac.delta, rhs);
}

} // namespace hho
