#pragma once

#include <vector>

#include "hho/assembly.hpp"
#include "hho/problem.hpp"
#include "hho/space.hpp"

namespace hho {

/// Newton matrix of the modified formulation with unknowns (alpha, d):
///   [ A  b ] [dalpha]
///   [ c  delta ] [dd]
struct JacobianBlocks {
    SparseMatrix A;
    Vector b;
    Vector c;
    double delta = -1.0;
    /// Per-cell contributions to A, in the cell's local layout (boundary
    /// faces included; their rows and columns are dropped on assembly).
    std::vector<Matrix> local;

    Eigen::Index size() const noexcept { return A.rows(); }
};

/// Residual and Jacobian of
///   F_j     = M(d) a_h(u_h, phi_j) - (f(u_T), phi_j)
///   F_{N+1} = ||grad R_h u_h||^2 - d
/// over the free unknowns of an HhoSpace.
class KirchhoffSystem {
public:
    KirchhoffSystem(const HhoSpace& space, const ProblemSpec& problem);

    const HhoSpace& space() const noexcept { return *space_; }
    const ProblemSpec& problem() const noexcept { return *problem_; }
    Eigen::Index n_free() const noexcept { return stiffness_.rows(); }

    const SparseMatrix& stiffness() const noexcept { return stiffness_; }
    const SparseMatrix& gradient_gram() const noexcept { return gradient_gram_; }

    /// (f(x, u_T), phi_j) for every free unknown j; face rows are zero.
    /// Throws SolverError on a non-finite f value, naming the cell and point.
    Vector load_vector(const Vector& alpha) const;

    /// [F_1 .. F_N, F_{N+1}]
    Vector residual(const Vector& alpha, double d) const;

    JacobianBlocks jacobian(const Vector& alpha, double d) const;

    /// alpha^T R alpha
    double nonlocal(const Vector& alpha) const;

private:
    void check_size(const Vector& alpha) const;
    /// Cell components of alpha at the cell's quadrature points.
    Vector cell_trace(std::size_t cell, const Vector& alpha) const;

    const HhoSpace* space_;
    const ProblemSpec* problem_;
    SparseMatrix stiffness_;
    SparseMatrix gradient_gram_;
};

} // namespace hho
