#pragma once

#include <functional>

#include <Eigen/Sparse>

#include "hho/hybrid_field.hpp"
#include "hho/space.hpp"

namespace hho {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Scatter one local matrix per cell onto the free unknowns. Rows and
/// columns of boundary-face unknowns are dropped (homogeneous Dirichlet).
/// Triplets are generated in cell order, so the result is deterministic.
SparseMatrix assemble(const HhoSpace& space, const std::function<const Matrix&(std::size_t)>& local);

/// Global a_h on the free unknowns.
SparseMatrix assemble_stiffness(const HhoSpace& space);
/// Global (grad R_h u, grad R_h v) on the free unknowns.
SparseMatrix assemble_gradient_gram(const HhoSpace& space);
/// Block-diagonal (u_T, v_T) over the cell unknowns, padded with zero face rows/columns.
SparseMatrix assemble_cell_mass(const HhoSpace& space);

} // namespace hho
