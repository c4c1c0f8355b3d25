#include "hho/linear_solvers.hpp"

#include <sstream>

#include "hho/errors.hpp"
#include "hho/parallel.hpp"

namespace hho {

namespace {

// Index of a local face unknown in the face-only system, or -1 on boundary faces.
long face_system_index(const GlobalDofMap& dofs, const std::vector<long>& map, std::size_t local)
{
    const long g = map[local];
    return g == GlobalDofMap::fixed ? -1 : g - static_cast<long>(dofs.n_cell_unknowns());
}

} // namespace

CondensedSystem::CondensedSystem(const HhoSpace& space, const std::vector<Matrix>& local, double rcond_threshold)
    : space_(&space)
{
    const auto& dofs = space.dofs();
    const std::size_t n_cells = space.mesh().n_cells();
    if (local.size() != n_cells)
        throw std::invalid_argument("one local matrix per cell is required");
    const auto nc = static_cast<Eigen::Index>(dofs.per_cell());

    blocks_.resize(n_cells);
    std::vector<Matrix> schur_local(n_cells);
    std::vector<double> rcond(n_cells, 1.0);
    parallel_for(n_cells, [&](std::size_t c) {
        const Matrix& a = local[c];
        const Eigen::Index nf = a.rows() - nc;
        CellBlock& blk = blocks_[c];
        blk.acc.compute(a.topLeftCorner(nc, nc));
        rcond[c] = blk.acc.rcond();
        blk.acf = a.topRightCorner(nc, nf);
        blk.afc = a.bottomLeftCorner(nf, nc);
        schur_local[c] = a.bottomRightCorner(nf, nf) - blk.afc * blk.acc.solve(blk.acf);
    });
    for (std::size_t c = 0; c < n_cells; ++c) {
        if (!(rcond[c] >= min_rcond_))
            min_rcond_ = rcond[c];
        if (ok_ && !(rcond[c] >= rcond_threshold)) {
            ok_ = false;
            bad_cell_ = c;
        }
    }
    if (!ok_)
        return;

    const auto n = static_cast<Eigen::Index>(dofs.n_face_unknowns());
    std::vector<Eigen::Triplet<double>> triplets;
    for (std::size_t c = 0; c < n_cells; ++c) {
        const auto& map = dofs.local_to_global(c);
        const Matrix& s = schur_local[c];
        for (Eigen::Index j = 0; j < s.cols(); ++j) {
            const long gj = face_system_index(dofs, map, static_cast<std::size_t>(nc + j));
            if (gj < 0)
                continue;
            for (Eigen::Index i = 0; i < s.rows(); ++i) {
                const long gi = face_system_index(dofs, map, static_cast<std::size_t>(nc + i));
                if (gi >= 0)
                    triplets.emplace_back(gi, gj, s(i, j));
            }
        }
    }
    schur_.resize(n, n);
    schur_.setFromTriplets(triplets.begin(), triplets.end());
    schur_.makeCompressed();
}

Vector CondensedSystem::reduce(const Vector& rhs) const
{
    const auto& dofs = space_->dofs();
    const auto nc = static_cast<Eigen::Index>(dofs.per_cell());
    const auto ncu = static_cast<Eigen::Index>(dofs.n_cell_unknowns());
    Vector g = rhs.tail(rhs.size() - ncu);
    for (std::size_t c = 0; c < blocks_.size(); ++c) {
        const CellBlock& blk = blocks_[c];
        const Vector t = blk.afc * blk.acc.solve(rhs.segment(static_cast<Eigen::Index>(dofs.cell_offset(c)), nc));
        const auto& map = dofs.local_to_global(c);
        for (Eigen::Index i = 0; i < t.size(); ++i) {
            const long gi = face_system_index(dofs, map, static_cast<std::size_t>(nc + i));
            if (gi >= 0)
                g[gi] -= t[i];
        }
    }
    return g;
}

Vector CondensedSystem::recover(const Vector& rhs, const Vector& faces) const
{
    const auto& dofs = space_->dofs();
    const auto nc = static_cast<Eigen::Index>(dofs.per_cell());
    Vector x(rhs.size());
    x.tail(faces.size()) = faces;
    for (std::size_t c = 0; c < blocks_.size(); ++c) {
        const CellBlock& blk = blocks_[c];
        const auto& map = dofs.local_to_global(c);
        Vector xf = Vector::Zero(blk.acf.cols());
        for (Eigen::Index i = 0; i < xf.size(); ++i) {
            const long gi = face_system_index(dofs, map, static_cast<std::size_t>(nc + i));
            if (gi >= 0)
                xf[i] = faces[gi];
        }
        const auto off = static_cast<Eigen::Index>(dofs.cell_offset(c));
        x.segment(off, nc) = blk.acc.solve(rhs.segment(off, nc) - blk.acf * xf);
    }
    return x;
}

void StaticCondensationSolver::compute(const JacobianBlocks& jac)
{
    warnings_.clear();
    condensed_ = std::make_unique<CondensedSystem>(*space_, jac.local);
    if (!condensed_->ok()) {
        std::ostringstream os;
        os << "cell block of cell " << condensed_->bad_cell() << " is near-singular (rcond "
           << condensed_->min_rcond() << "); using the uncondensed solve";
        warnings_.push_back(os.str());
        condensed_.reset();
        fallback_.compute(jac.A);
        warnings_.insert(warnings_.end(), fallback_.warnings().begin(), fallback_.warnings().end());
        return;
    }
    face_system_empty_ = condensed_->size() == 0;
    if (!face_system_empty_) {
        face_solver_.compute(condensed_->matrix());
        warnings_.insert(warnings_.end(), face_solver_.warnings().begin(), face_solver_.warnings().end());
    }
}

Vector StaticCondensationSolver::solve(const Vector& rhs) const
{
    if (!condensed_)
        return fallback_.solve(rhs);
    const Vector faces = face_system_empty_ ? Vector(0) : face_solver_.solve(condensed_->reduce(rhs));
    Vector x = condensed_->recover(rhs, faces);
    if (!x.allFinite())
        throw SolverError("static condensation produced non-finite values");
    return x;
}

} // namespace hho
