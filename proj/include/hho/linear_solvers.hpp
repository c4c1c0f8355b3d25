#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include "hho/system.hpp"

namespace hho {

/// How the Newton system is solved.
enum class SolverPath {
    dense,        // dense LU of the full (N+1)x(N+1) bordered matrix
    smw_sparse,   // block elimination, sparse direct solves with A
    smw_condensed // block elimination, A solved by static condensation
};

std::string_view solver_path_name(SolverPath path) noexcept;
SolverPath parse_solver_path(std::string_view name);

/// Solves A x = r for the A block of a JacobianBlocks.
class LinearSolver {
public:
    virtual ~LinearSolver() = default;
    virtual void compute(const JacobianBlocks& jac) = 0;
    virtual Vector solve(const Vector& rhs) const = 0;
    /// Diagnostics raised while factorizing (fallbacks taken).
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

protected:
    std::vector<std::string> warnings_;
};

/// Sparse LDL^T, falling back to sparse LU when A is not quasi-definite.
class SparseDirectSolver final : public LinearSolver {
public:
    void compute(const JacobianBlocks& jac) override;
    void compute(const SparseMatrix& A);
    Vector solve(const Vector& rhs) const override;

private:
    Eigen::SimplicialLDLT<SparseMatrix> ldlt_;
    Eigen::SparseLU<SparseMatrix> lu_;
    bool use_lu_ = false;
};

/// Conjugate gradients with relative tolerance 1e-12, for SPD A
/// (M(d) times the stiffness, f' <= 0).
class ConjugateGradientSolver final : public LinearSolver {
public:
    explicit ConjugateGradientSolver(double tolerance = 1e-12, int max_iterations = 0)
        : tolerance_(tolerance), max_iterations_(max_iterations) {}
    void compute(const JacobianBlocks& jac) override;
    Vector solve(const Vector& rhs) const override;

private:
    SparseMatrix A_;
    double tolerance_;
    int max_iterations_;
};

/// Face-only Schur complement system, cell unknowns eliminated cellwise.
class CondensedSystem {
public:
    CondensedSystem(const HhoSpace& space, const std::vector<Matrix>& local, double rcond_threshold = 1e-13);

    /// False when some cell block was (nearly) singular; `bad_cell()` names it.
    bool ok() const noexcept { return ok_; }
    std::size_t bad_cell() const noexcept { return bad_cell_; }
    double min_rcond() const noexcept { return min_rcond_; }

    /// (k+1) x #interior faces
    Eigen::Index size() const noexcept { return schur_.rows(); }
    const SparseMatrix& matrix() const noexcept { return schur_; }

    /// g_f - sum_T A_fc A_cc^-1 g_c, for a right-hand side over all free unknowns.
    Vector reduce(const Vector& rhs) const;
    /// Full free-unknown vector from face values: x_c = A_cc^-1 (g_c - A_cf x_f).
    Vector recover(const Vector& rhs, const Vector& faces) const;

private:
    struct CellBlock {
        Eigen::PartialPivLU<Matrix> acc;
        Matrix acf; // cell rows x local face columns
        Matrix afc; // local face rows x cell columns
    };

    const HhoSpace* space_;
    std::vector<CellBlock> blocks_;
    SparseMatrix schur_;
    bool ok_ = true;
    std::size_t bad_cell_ = 0;
    double min_rcond_ = 1.0;
};

/// Static condensation onto the face unknowns; falls back to
/// SparseDirectSolver (with a warning) when a cell block is near-singular.
class StaticCondensationSolver final : public LinearSolver {
public:
    explicit StaticCondensationSolver(const HhoSpace& space) : space_(&space) {}
    void compute(const JacobianBlocks& jac) override;
    Vector solve(const Vector& rhs) const override;
    bool condensed() const noexcept { return condensed_ != nullptr; }

private:
    const HhoSpace* space_;
    std::unique_ptr<CondensedSystem> condensed_;
    SparseDirectSolver face_solver_;
    SparseDirectSolver fallback_;
    bool face_system_empty_ = false;
};

/// Solves [A b; c delta][x; y] = rhs with two solves against A:
///   A z1 = rhs_top, A z2 = b, y = (c.z1 - rhs_bot)/(c.z2 - delta), x = z1 - y z2.
/// Throws SolverError when |c.z2 - delta| < 1e-14.
Vector bordered_solve(const LinearSolver& solver, const Vector& b, const Vector& c, double delta, const Vector& rhs);

/// Same system through a dense LU of the assembled bordered matrix.
Vector dense_bordered_solve(const JacobianBlocks& jac, const Vector& rhs);

/// Solves J x = rhs along the chosen path.
Vector solve_newton_system(const HhoSpace& space, const JacobianBlocks& jac, const Vector& rhs, SolverPath path,
                           std::vector<std::string>* warnings = nullptr);

} // namespace hho
