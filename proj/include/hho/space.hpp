#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "hho/basis.hpp"
#include "hho/local_ops.hpp"
#include "hho/mesh.hpp"

namespace hho {

struct DiscretizationOptions {
    int k = 1;
    /// Exactness of the cell rules; negative selects 2(k+2).
    int cell_quadrature_degree = -1;
    /// Exactness of the face rules; negative selects 2k+2.
    int face_quadrature_degree = -1;
    bool orthonormal_cell_basis = false;

    int cell_degree() const noexcept { return cell_quadrature_degree >= 0 ? cell_quadrature_degree : 2 * (k + 2); }
    int face_degree() const noexcept { return face_quadrature_degree >= 0 ? face_quadrature_degree : 2 * k + 2; }
};

/// Free unknowns: every cell block (cell order), then every interior-face
/// block (in mesh.interior_faces() order). Boundary-face unknowns are fixed
/// to zero and have no global index.
class GlobalDofMap {
public:
    static constexpr long fixed = -1;

    GlobalDofMap() = default;
    GlobalDofMap(const PolyMesh& mesh, int k);

    std::size_t n_free() const noexcept { return n_free_; }
    std::size_t n_cell_unknowns() const noexcept { return n_cell_unknowns_; }
    std::size_t n_face_unknowns() const noexcept { return n_free_ - n_cell_unknowns_; }
    std::size_t per_cell() const noexcept { return per_cell_; }
    std::size_t per_face() const noexcept { return per_face_; }

    std::size_t cell_offset(std::size_t cell) const noexcept { return cell * per_cell_; }
    /// First global index of a face block, or `fixed` for boundary faces.
    long face_offset(std::size_t face) const { return face_offset_.at(face); }
    /// Global index of each local unknown of a cell (`fixed` on boundary faces).
    const std::vector<long>& local_to_global(std::size_t cell) const { return local_to_global_.at(cell); }

private:
    std::size_t per_cell_ = 0;
    std::size_t per_face_ = 0;
    std::size_t n_cell_unknowns_ = 0;
    std::size_t n_free_ = 0;
    std::vector<long> face_offset_;
    std::vector<std::vector<long>> local_to_global_;
};

/// Discrete HHO space of degree k on a mesh: bases, quadrature rules and
/// the per-cell operators, all built once and immutable afterwards.
class HhoSpace {
public:
    HhoSpace(std::shared_ptr<const PolyMesh> mesh, DiscretizationOptions options);
    HhoSpace(const PolyMesh& mesh, DiscretizationOptions options);

    const PolyMesh& mesh() const noexcept { return *mesh_; }
    const std::shared_ptr<const PolyMesh>& mesh_ptr() const noexcept { return mesh_; }
    int degree() const noexcept { return options_.k; }
    const DiscretizationOptions& options() const noexcept { return options_; }
    const GlobalDofMap& dofs() const noexcept { return dofs_; }

    /// Degree k+1 basis; the cell unknowns use its leading functions.
    const CellBasis& cell_basis(std::size_t cell) const { return cell_bases_.at(cell); }
    const FaceBasis& face_basis(std::size_t face) const { return face_bases_.at(face); }
    const QuadratureRule& cell_rule(std::size_t cell) const { return cell_rules_.at(cell); }
    const QuadratureRule& face_rule(std::size_t face) const { return face_rules_.at(face); }
    const LocalOps& local_ops(std::size_t cell) const { return local_ops_.at(cell); }
    /// Cell-unknown basis (degree k) sampled at the cell rule points.
    const RowMatrix& cell_values(std::size_t cell) const { return cell_values_.at(cell); }

    LocalContext context(std::size_t cell) const;

    std::size_t n_cell_unknowns_per_cell() const noexcept { return cell_basis_size(options_.k); }
    std::size_t n_face_unknowns_per_face() const noexcept { return face_basis_size(options_.k); }

private:
    void build();

    std::shared_ptr<const PolyMesh> mesh_;
    DiscretizationOptions options_;
    GlobalDofMap dofs_;
    std::vector<CellBasis> cell_bases_;
    std::vector<FaceBasis> face_bases_;
    std::vector<QuadratureRule> cell_rules_;
    std::vector<QuadratureRule> face_rules_;
    std::vector<LocalOps> local_ops_;
    std::vector<RowMatrix> cell_values_;
};

} // namespace hho
