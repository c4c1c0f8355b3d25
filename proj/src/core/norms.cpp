#include "hho/norms.hpp"

#include <algorithm>
#include <cmath>

namespace hho {

namespace {

template <typename Pick>
double local_quadratic_sum(const HhoSpace& space, const HybridField& v, Pick pick)
{
    double sum = 0.0;
    for (std::size_t c = 0; c < space.mesh().n_cells(); ++c) {
        const Vector x = v.local_vector(space, c);
        sum += x.dot(pick(space.local_ops(c)) * x);
    }
    // Round-off can push a vanishing quadratic form slightly negative.
    return std::sqrt(std::max(sum, 0.0));
}

} // namespace

double energy_norm(const HhoSpace& space, const HybridField& v)
{
    return local_quadratic_sum(space, v, [](const LocalOps& ops) -> const Matrix& { return ops.stiffness; });
}

double one_norm(const HhoSpace& space, const HybridField& v)
{
    return local_quadratic_sum(space, v, [](const LocalOps& ops) -> const Matrix& { return ops.one_norm; });
}

double grad_recon_norm(const HhoSpace& space, const HybridField& v)
{
    return local_quadratic_sum(space, v, [](const LocalOps& ops) -> const Matrix& { return ops.gradient_gram; });
}

double cell_l2_norm(const HhoSpace& space, const HybridField& v)
{
    double sum = 0.0;
    for (std::size_t c = 0; c < space.mesh().n_cells(); ++c)
        sum += v.cell(c).dot(space.local_ops(c).cell_mass * v.cell(c));
    return std::sqrt(std::max(sum, 0.0));
}

double l2_norm(const HhoSpace& space, const ScalarField& g)
{
    double sum = 0.0;
    for (std::size_t c = 0; c < space.mesh().n_cells(); ++c) {
        const auto& rule = space.cell_rule(c);
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const double val = g(rule.point(q));
            sum += rule.w[q] * val * val;
        }
    }
    return std::sqrt(sum);
}

} // namespace hho
