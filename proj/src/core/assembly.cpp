#include "hho/assembly.hpp"

#include <stdexcept>
#include <vector>

#include "hho/errors.hpp"

namespace hho {

SparseMatrix assemble(const HhoSpace& space, const std::function<const Matrix&(std::size_t)>& local)
{
    const auto& dofs = space.dofs();
    const auto n = static_cast<Eigen::Index>(dofs.n_free());
    std::vector<Eigen::Triplet<double>> triplets;
    for (std::size_t c = 0; c < space.mesh().n_cells(); ++c) {
        const Matrix& a = local(c);
        const auto& map = dofs.local_to_global(c);
        if (static_cast<std::size_t>(a.rows()) != map.size() || static_cast<std::size_t>(a.cols()) != map.size())
            throw SolverError("local matrix of cell " + std::to_string(c) + " does not match its dof layout");
        for (std::size_t j = 0; j < map.size(); ++j) {
            if (map[j] == GlobalDofMap::fixed)
                continue;
            for (std::size_t i = 0; i < map.size(); ++i) {
                if (map[i] == GlobalDofMap::fixed)
                    continue;
                if (map[i] >= n || map[j] >= n)
                    throw SolverError("global index out of range while assembling");
                triplets.emplace_back(map[i], map[j], a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
            }
        }
    }
    SparseMatrix out(n, n);
    out.setFromTriplets(triplets.begin(), triplets.end());
    out.makeCompressed();
    return out;
}

SparseMatrix assemble_stiffness(const HhoSpace& space)
{
    return assemble(space, [&](std::size_t c) -> const Matrix& { return space.local_ops(c).stiffness; });
}

SparseMatrix assemble_gradient_gram(const HhoSpace& space)
{
    return assemble(space, [&](std::size_t c) -> const Matrix& { return space.local_ops(c).gradient_gram; });
}

SparseMatrix assemble_cell_mass(const HhoSpace& space)
{
    std::vector<Matrix> padded(space.mesh().n_cells());
    return assemble(space, [&](std::size_t c) -> const Matrix& {
        const auto& ops = space.local_ops(c);
        const auto nt = static_cast<Eigen::Index>(ops.layout.n_total());
        const auto nc = static_cast<Eigen::Index>(ops.layout.n_cell);
        padded[c] = Matrix::Zero(nt, nt);
        padded[c].topLeftCorner(nc, nc) = ops.cell_mass;
        return padded[c];
    });
}

} // namespace hho
