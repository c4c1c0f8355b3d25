#include "hho/hybrid_field.hpp"

#include <stdexcept>

namespace hho {

HybridField::HybridField(const HhoSpace& space)
    : mesh_(space.mesh_ptr()), k_(space.degree()),
      cells_(space.mesh().n_cells(), Vector::Zero(static_cast<Eigen::Index>(space.n_cell_unknowns_per_cell()))),
      faces_(space.mesh().n_faces(), Vector::Zero(static_cast<Eigen::Index>(space.n_face_unknowns_per_face())))
{
}

bool HybridField::homogeneous_boundary() const
{
    if (!mesh_)
        return true;
    for (auto f : mesh_->boundary_faces())
        if (faces_[f].cwiseAbs().maxCoeff() != 0.0)
            return false;
    return true;
}

Vector HybridField::local_vector(const HhoSpace& space, std::size_t c) const
{
    const Cell& cell = space.mesh().cell(c);
    const auto nc = static_cast<Eigen::Index>(space.n_cell_unknowns_per_cell());
    const auto nf = static_cast<Eigen::Index>(space.n_face_unknowns_per_face());
    Vector v(nc + nf * static_cast<Eigen::Index>(cell.n_faces()));
    v.head(nc) = cells_.at(c);
    for (std::size_t i = 0; i < cell.n_faces(); ++i)
        v.segment(nc + static_cast<Eigen::Index>(i) * nf, nf) = faces_.at(cell.faces[i]);
    return v;
}

Vector HybridField::to_free(const HhoSpace& space) const
{
    if (!homogeneous_boundary())
        throw std::invalid_argument("field has non-zero boundary values and no free-vector representation");
    const auto& dofs = space.dofs();
    Vector out(static_cast<Eigen::Index>(dofs.n_free()));
    const auto nc = static_cast<Eigen::Index>(dofs.per_cell());
    const auto nf = static_cast<Eigen::Index>(dofs.per_face());
    for (std::size_t c = 0; c < cells_.size(); ++c)
        out.segment(static_cast<Eigen::Index>(dofs.cell_offset(c)), nc) = cells_[c];
    for (auto f : space.mesh().interior_faces())
        out.segment(dofs.face_offset(f), nf) = faces_[f];
    return out;
}

HybridField HybridField::from_free(const HhoSpace& space, const Vector& free)
{
    const auto& dofs = space.dofs();
    if (static_cast<std::size_t>(free.size()) != dofs.n_free())
        throw std::invalid_argument("free vector has the wrong length");
    HybridField field(space);
    const auto nc = static_cast<Eigen::Index>(dofs.per_cell());
    const auto nf = static_cast<Eigen::Index>(dofs.per_face());
    for (std::size_t c = 0; c < field.cells_.size(); ++c)
        field.cells_[c] = free.segment(static_cast<Eigen::Index>(dofs.cell_offset(c)), nc);
    for (auto f : space.mesh().interior_faces())
        field.faces_[f] = free.segment(dofs.face_offset(f), nf);
    return field;
}

HybridField& HybridField::operator+=(const HybridField& other)
{
    if (other.cells_.size() != cells_.size() || other.faces_.size() != faces_.size() || other.k_ != k_)
        throw std::invalid_argument("incompatible hybrid fields");
    for (std::size_t i = 0; i < cells_.size(); ++i)
        cells_[i] += other.cells_[i];
    for (std::size_t i = 0; i < faces_.size(); ++i)
        faces_[i] += other.faces_[i];
    return *this;
}

HybridField& HybridField::operator-=(const HybridField& other)
{
    HybridField neg = other;
    neg *= -1.0;
    return *this += neg;
}

HybridField& HybridField::operator*=(double s)
{
    for (auto& v : cells_)
        v *= s;
    for (auto& v : faces_)
        v *= s;
    return *this;
}

HybridField operator+(HybridField a, const HybridField& b) { return a += b; }
HybridField operator-(HybridField a, const HybridField& b) { return a -= b; }
HybridField operator*(double s, HybridField a) { return a *= s; }

HybridField interpolate(const HhoSpace& space, const ScalarField& v, BoundaryMode mode)
{
    HybridField field = project_cells(space, v);
    const PolyMesh& mesh = space.mesh();
    for (std::size_t f = 0; f < mesh.n_faces(); ++f) {
        if (mode == BoundaryMode::zero && mesh.face(f).is_boundary())
            continue;
        field.face(f) = project_face(space.face_basis(f), space.face_rule(f), v);
    }
    return field;
}

HybridField project_cells(const HhoSpace& space, const ScalarField& v)
{
    HybridField field(space);
    for (std::size_t c = 0; c < space.mesh().n_cells(); ++c)
        field.cell(c) = project_cell(space.cell_basis(c), space.cell_rule(c), v, space.n_cell_unknowns_per_cell());
    return field;
}

} // namespace hho
