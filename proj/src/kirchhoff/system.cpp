#include "hho/system.hpp"

#include <cmath>
#include <sstream>

#include "hho/errors.hpp"
#include "hho/parallel.hpp"

namespace hho {

KirchhoffSystem::KirchhoffSystem(const HhoSpace& space, const ProblemSpec& problem)
    : space_(&space), problem_(&problem), stiffness_(assemble_stiffness(space)),
      gradient_gram_(assemble_gradient_gram(space))
{
    problem.validate();
}

void KirchhoffSystem::check_size(const Vector& alpha) const
{
    if (alpha.size() != n_free())
        throw std::invalid_argument("coefficient vector has length " + std::to_string(alpha.size()) + ", expected "
                                    + std::to_string(n_free()));
}

Vector KirchhoffSystem::cell_trace(std::size_t cell, const Vector& alpha) const
{
    const auto& dofs = space_->dofs();
    const auto nc = static_cast<Eigen::Index>(dofs.per_cell());
    const RowMatrix& vals = space_->cell_values(cell);
    return vals.transpose() * alpha.segment(static_cast<Eigen::Index>(dofs.cell_offset(cell)), nc);
}

Vector KirchhoffSystem::load_vector(const Vector& alpha) const
{
    check_size(alpha);
    const auto& dofs = space_->dofs();
    const auto nc = static_cast<Eigen::Index>(dofs.per_cell());
    const std::size_t n_cells = space_->mesh().n_cells();
    Vector out = Vector::Zero(n_free());
    parallel_for(n_cells, [&](std::size_t c) {
        const auto& rule = space_->cell_rule(c);
        const Vector u = cell_trace(c, alpha);
        Vector wf(static_cast<Eigen::Index>(rule.size()));
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const Point p = rule.point(q);
            const double fq = problem_->load(p, u[static_cast<Eigen::Index>(q)]);
            if (!std::isfinite(fq)) {
                std::ostringstream os;
                os << "non-finite load f = " << fq << " in cell " << c << " at quadrature point " << q << " ("
                   << p.x() << ", " << p.y() << "), u = " << u[static_cast<Eigen::Index>(q)];
                throw SolverError(os.str());
            }
            wf[static_cast<Eigen::Index>(q)] = rule.w[q] * fq;
        }
        // Cell blocks are disjoint, so concurrent writes never overlap.
        out.segment(static_cast<Eigen::Index>(dofs.cell_offset(c)), nc) = space_->cell_values(c) * wf;
    });
    return out;
}

double KirchhoffSystem::nonlocal(const Vector& alpha) const
{
    check_size(alpha);
    return alpha.dot(gradient_gram_ * alpha);
}

Vector KirchhoffSystem::residual(const Vector& alpha, double d) const
{
    check_size(alpha);
    const Eigen::Index n = n_free();
    Vector out(n + 1);
    out.head(n) = problem_->coefficient(d) * (stiffness_ * alpha) - load_vector(alpha);
    out[n] = nonlocal(alpha) - d;
    return out;
}

JacobianBlocks KirchhoffSystem::jacobian(const Vector& alpha, double d) const
{
    check_size(alpha);
    const auto& dofs = space_->dofs();
    const auto nc = static_cast<Eigen::Index>(dofs.per_cell());
    const double m = problem_->coefficient(d);
    const std::size_t n_cells = space_->mesh().n_cells();

    JacobianBlocks jac;
    jac.local.resize(n_cells);
    parallel_for(n_cells, [&](std::size_t c) {
        const auto& rule = space_->cell_rule(c);
        const Vector u = cell_trace(c, alpha);
        Vector wfu(static_cast<Eigen::Index>(rule.size()));
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const Point p = rule.point(q);
            const double g = problem_->load_du(p, u[static_cast<Eigen::Index>(q)]);
            if (!std::isfinite(g)) {
                std::ostringstream os;
                os << "non-finite load derivative " << g << " in cell " << c << " at quadrature point " << q;
                throw SolverError(os.str());
            }
            wfu[static_cast<Eigen::Index>(q)] = rule.w[q] * g;
        }
        const RowMatrix& vals = space_->cell_values(c);
        Matrix local = m * space_->local_ops(c).stiffness;
        local.topLeftCorner(nc, nc) -= vals * wfu.asDiagonal() * vals.transpose();
        jac.local[c] = std::move(local);
    });
    jac.A = assemble(*space_, [&](std::size_t c) -> const Matrix& { return jac.local[c]; });
    jac.b = problem_->coefficient_derivative(d) * (stiffness_ * alpha);
    jac.c = 2.0 * (gradient_gram_ * alpha);
    jac.delta = -1.0;
    return jac;
}

} // namespace hho
