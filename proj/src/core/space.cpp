#include "hho/space.hpp"

#include <stdexcept>

#include "hho/parallel.hpp"

namespace hho {

GlobalDofMap::GlobalDofMap(const PolyMesh& mesh, int k)
    : per_cell_(cell_basis_size(k)), per_face_(face_basis_size(k))
{
    if (k < 0)
        throw std::invalid_argument("polynomial degree must be >= 0");
    n_cell_unknowns_ = mesh.n_cells() * per_cell_;
    face_offset_.assign(mesh.n_faces(), fixed);
    std::size_t next = n_cell_unknowns_;
    for (auto f : mesh.interior_faces()) {
        face_offset_[f] = static_cast<long>(next);
        next += per_face_;
    }
    n_free_ = next;

    local_to_global_.resize(mesh.n_cells());
    for (std::size_t c = 0; c < mesh.n_cells(); ++c) {
        const Cell& cell = mesh.cell(c);
        auto& map = local_to_global_[c];
        map.reserve(per_cell_ + cell.n_faces() * per_face_);
        for (std::size_t i = 0; i < per_cell_; ++i)
            map.push_back(static_cast<long>(cell_offset(c) + i));
        for (auto f : cell.faces) {
            const long off = face_offset_[f];
            for (std::size_t i = 0; i < per_face_; ++i)
                map.push_back(off == fixed ? fixed : off + static_cast<long>(i));
        }
    }
}

HhoSpace::HhoSpace(std::shared_ptr<const PolyMesh> mesh, DiscretizationOptions options)
    : mesh_(std::move(mesh)), options_(options)
{
    if (!mesh_)
        throw std::invalid_argument("HhoSpace needs a mesh");
    if (options_.k < 0)
        throw std::invalid_argument("polynomial degree must be >= 0");
    if (options_.cell_degree() < 2 * (options_.k + 1) || options_.face_degree() < 2 * options_.k + 1)
        throw std::invalid_argument("quadrature too weak for the requested degree");
    build();
}

HhoSpace::HhoSpace(const PolyMesh& mesh, DiscretizationOptions options)
    : HhoSpace(std::make_shared<const PolyMesh>(mesh), options)
{
}

void HhoSpace::build()
{
    const PolyMesh& mesh = *mesh_;
    const int k = options_.k;
    dofs_ = GlobalDofMap(mesh, k);

    face_bases_.reserve(mesh.n_faces());
    face_rules_.reserve(mesh.n_faces());
    for (const auto& f : mesh.faces()) {
        face_bases_.emplace_back(f, k);
        face_rules_.push_back(quadrature_face(f, options_.face_degree()));
    }

    cell_bases_.reserve(mesh.n_cells());
    cell_rules_.reserve(mesh.n_cells());
    cell_values_.reserve(mesh.n_cells());
    for (std::size_t c = 0; c < mesh.n_cells(); ++c) {
        const Cell& cell = mesh.cell(c);
        cell_rules_.push_back(quadrature_cell(cell, options_.cell_degree()));
        if (options_.orthonormal_cell_basis)
            cell_bases_.push_back(CellBasis::orthonormalized(cell, k + 1, cell_rules_.back()));
        else
            cell_bases_.emplace_back(cell, k + 1);
        cell_values_.push_back(
            cell_bases_.back().values(cell_rules_.back()).topRows(static_cast<Eigen::Index>(cell_basis_size(k))));
    }

    local_ops_.assign(mesh.n_cells(), LocalOps{});
    parallel_for(mesh.n_cells(), [&](std::size_t c) { local_ops_[c] = build_local_ops(context(c)); });
}

LocalContext HhoSpace::context(std::size_t c) const
{
    const Cell& cell = mesh_->cell(c);
    LocalContext ctx;
    ctx.cell = &cell;
    ctx.basis = &cell_bases_.at(c);
    ctx.cell_rule = &cell_rules_.at(c);
    ctx.k = options_.k;
    for (auto f : cell.faces) {
        ctx.face_bases.push_back(&face_bases_[f]);
        ctx.face_rules.push_back(&face_rules_[f]);
        ctx.face_diameters.push_back(mesh_->face(f).diameter);
    }
    return ctx;
}

} // namespace hho
