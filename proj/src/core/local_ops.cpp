#include "hho/local_ops.hpp"

#include <stdexcept>

#include "hho/errors.hpp"

namespace hho {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

void check_context(const LocalContext& ctx)
{
    if (ctx.cell == nullptr || ctx.basis == nullptr || ctx.cell_rule == nullptr)
        throw std::invalid_argument("incomplete local context");
    if (ctx.face_bases.size() != ctx.cell->n_faces() || ctx.face_rules.size() != ctx.cell->n_faces() ||
        ctx.face_diameters.size() != ctx.cell->n_faces())
        throw std::invalid_argument("local context face data does not match the cell");
    if (ctx.basis->degree() != ctx.k + 1)
        throw std::invalid_argument("local context cell basis must have degree k+1");
    if (ctx.cell_rule->degree < 2 * (ctx.k + 1))
        throw std::invalid_argument("cell quadrature must be exact to 2(k+1)");
}

Matrix stiffness_of(const RowMatrix& dx, const RowMatrix& dy, const QuadratureRule& rule)
{
    Matrix k = gram_matrix(dx, dx, rule) + gram_matrix(dy, dy, rule);
    return 0.5 * (k + k.transpose());
}

} // namespace

LocalDofLayout LocalContext::layout() const
{
    return {cell_basis_size(k), face_basis_size(k), cell == nullptr ? 0 : cell->n_faces()};
}

Matrix reconstruct_operator(const LocalContext& ctx)
{
    check_context(ctx);
    const LocalDofLayout lay = ctx.layout();
    const Eigen::Index nr = idx(ctx.basis->size());
    const Eigen::Index nc = idx(lay.n_cell);
    const Eigen::Index nf = idx(lay.n_per_face);
    const Eigen::Index nt = idx(lay.n_total());
    const QuadratureRule& rule = *ctx.cell_rule;

    RowMatrix dx, dy;
    ctx.basis->gradients(rule, dx, dy);
    const Matrix stiff = stiffness_of(dx, dy, rule);

    Matrix rhs = Matrix::Zero(nr, nt);
    rhs.leftCols(nc) = stiff.leftCols(nc);

    for (std::size_t i = 0; i < lay.n_faces; ++i) {
        const QuadratureRule& frule = *ctx.face_rules[i];
        const Point& n = ctx.cell->normals[i];
        const RowMatrix fvals = ctx.face_bases[i]->values(frule);
        RowMatrix gdx, gdy;
        ctx.basis->gradients(frule, gdx, gdy);
        const RowMatrix grad_n = n.x() * gdx + n.y() * gdy;
        const RowMatrix cvals = ctx.basis->values(frule).topRows(nc);
        rhs.middleCols(idx(lay.face_offset(i)), nf) += gram_matrix(grad_n, fvals, frule);
        rhs.leftCols(nc) -= gram_matrix(grad_n, cvals, frule);
    }

    // Mean-value constraint as a bordered (nr+1) system.
    const RowMatrix vals = ctx.basis->values(rule);
    Vector mean(nr);
    for (Eigen::Index j = 0; j < nr; ++j)
        mean[j] = vals.row(j).dot(Eigen::Map<const Eigen::RowVectorXd>(rule.w.data(), idx(rule.size())));

    Matrix lhs = Matrix::Zero(nr + 1, nr + 1);
    lhs.topLeftCorner(nr, nr) = stiff;
    lhs.topRightCorner(nr, 1) = mean;
    lhs.bottomLeftCorner(1, nr) = mean.transpose();

    Matrix full_rhs = Matrix::Zero(nr + 1, nt);
    full_rhs.topRows(nr) = rhs;
    full_rhs.bottomLeftCorner(1, nc) = mean.head(nc).transpose();

    Eigen::FullPivLU<Matrix> lu(lhs);
    if (!lu.isInvertible())
        throw SolverError("singular reconstruction system on a cell");
    const Matrix sol = lu.solve(full_rhs);
    return sol.topRows(nr);
}

Matrix stabilization_operator(const LocalContext& ctx, const Matrix& reconstruction)
{
    check_context(ctx);
    const LocalDofLayout lay = ctx.layout();
    const Eigen::Index nr = idx(ctx.basis->size());
    const Eigen::Index nc = idx(lay.n_cell);
    const Eigen::Index nf = idx(lay.n_per_face);
    const Eigen::Index nt = idx(lay.n_total());
    if (reconstruction.rows() != nr || reconstruction.cols() != nt)
        throw std::invalid_argument("reconstruction matrix has the wrong shape");

    const Matrix mass = mass_matrix(ctx.basis->values(*ctx.cell_rule), *ctx.cell_rule);
    // pi_T^k R, as P^k coefficients.
    const Matrix proj = mass.topLeftCorner(nc, nc).llt().solve(mass.topRows(nc) * reconstruction);
    // R - pi_T^k R, as P^{k+1} coefficients.
    Matrix defect = reconstruction;
    defect.topRows(nc) -= proj;

    Matrix stab = Matrix::Zero(nt, nt);
    for (std::size_t i = 0; i < lay.n_faces; ++i) {
        const QuadratureRule& frule = *ctx.face_rules[i];
        const RowMatrix fvals = ctx.face_bases[i]->values(frule);
        const RowMatrix cvals = ctx.basis->values(frule);
        const Matrix face_mass = mass_matrix(fvals, frule);
        const Matrix face_cell = gram_matrix(fvals, cvals, frule);
        const Eigen::LLT<Matrix> face_llt(face_mass);

        Matrix diff = -face_cell * defect;
        diff.leftCols(nc) -= face_cell.leftCols(nc);
        Matrix d = face_llt.solve(diff);
        d.middleCols(idx(lay.face_offset(i)), nf) += Matrix::Identity(nf, nf);

        stab += d.transpose() * face_mass * d;
    }
    stab /= ctx.cell->diameter;
    return 0.5 * (stab + stab.transpose());
}

LocalOps build_local_ops(const LocalContext& ctx)
{
    check_context(ctx);
    LocalOps ops;
    ops.layout = ctx.layout();
    const Eigen::Index nc = idx(ops.layout.n_cell);
    const Eigen::Index nf = idx(ops.layout.n_per_face);
    const Eigen::Index nt = idx(ops.layout.n_total());
    const QuadratureRule& rule = *ctx.cell_rule;

    ops.reconstruction = reconstruct_operator(ctx);

    RowMatrix dx, dy;
    ctx.basis->gradients(rule, dx, dy);
    const Matrix stiff = stiffness_of(dx, dy, rule);
    ops.gradient_gram = ops.reconstruction.transpose() * stiff * ops.reconstruction;
    ops.gradient_gram = 0.5 * (ops.gradient_gram + ops.gradient_gram.transpose());
    ops.stabilization = stabilization_operator(ctx, ops.reconstruction);
    ops.stiffness = ops.gradient_gram + ops.stabilization;

    const RowMatrix cvals_cell = ctx.basis->values(rule).topRows(nc);
    ops.cell_mass = mass_matrix(cvals_cell, rule);

    ops.one_norm = Matrix::Zero(nt, nt);
    ops.one_norm.topLeftCorner(nc, nc) = stiff.topLeftCorner(nc, nc);
    for (std::size_t i = 0; i < ops.layout.n_faces; ++i) {
        const QuadratureRule& frule = *ctx.face_rules[i];
        const RowMatrix fvals = ctx.face_bases[i]->values(frule);
        const RowMatrix cvals = ctx.basis->values(frule).topRows(nc);
        const Matrix face_mass = mass_matrix(fvals, frule);
        Matrix jump = Matrix::Zero(nf, nt);
        jump.leftCols(nc) = -face_mass.llt().solve(gram_matrix(fvals, cvals, frule));
        jump.middleCols(idx(ops.layout.face_offset(i)), nf) = Matrix::Identity(nf, nf);
        ops.one_norm += jump.transpose() * face_mass * jump / ctx.face_diameters[i];
    }
    return ops;
}

} // namespace hho
