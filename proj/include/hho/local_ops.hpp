#pragma once

#include <cstddef>
#include <vector>

#include "hho/basis.hpp"

namespace hho {

/// Local unknowns of one cell: the cell block first, then one block per face
/// in the cell's face order.
struct LocalDofLayout {
    std::size_t n_cell = 0;
    std::size_t n_per_face = 0;
    std::size_t n_faces = 0;

    std::size_t n_total() const noexcept { return n_cell + n_faces * n_per_face; }
    std::size_t face_offset(std::size_t i) const noexcept { return n_cell + i * n_per_face; }
};

/// Geometry and discrete spaces a cell's operators are built from.
/// `basis` has degree k+1; its leading cell_basis_size(k) functions carry the cell unknowns.
struct LocalContext {
    const Cell* cell = nullptr;
    const CellBasis* basis = nullptr;
    const QuadratureRule* cell_rule = nullptr;
    std::vector<const FaceBasis*> face_bases;
    std::vector<const QuadratureRule*> face_rules;
    std::vector<double> face_diameters;
    int k = 0;

    LocalDofLayout layout() const;
};

struct LocalOps {
    LocalDofLayout layout;
    Matrix reconstruction; // P^{k+1}(T) coefficients x local unknowns
    Matrix gradient_gram;  // (grad R u, grad R v)_T
    Matrix stabilization;  // s_T
    Matrix stiffness;      // gradient_gram + stabilization
    Matrix one_norm;       // ||grad v_T||^2 + sum_F h_F^-1 ||v_F - v_T||_F^2
    Matrix cell_mass;      // (v_T, w_T)_T on P^k(T)
};

/// Potential reconstruction R_T^{k+1}: the cell Neumann problem
///   (grad R v, grad w)_T = (grad v_T, grad w)_T + sum_F (v_F - v_T, grad w . n_TF)_F
/// closed by (R v, 1)_T = (v_T, 1)_T through a Lagrange multiplier.
Matrix reconstruct_operator(const LocalContext& ctx);

/// s_T = 1/h_T sum_F D_F^T M_F D_F, where D_F v is the face-polynomial
/// coefficient vector of pi_F^k(v_F - v_T - (R v - pi_T^k R v)).
Matrix stabilization_operator(const LocalContext& ctx, const Matrix& reconstruction);

LocalOps build_local_ops(const LocalContext& ctx);

} // namespace hho
