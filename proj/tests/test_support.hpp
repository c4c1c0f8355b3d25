#pragma once

#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "hho/mesh.hpp"
#include "hho/space.hpp"

namespace hho::test {

inline PolyMesh two_triangles()
{
    return build_topology({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2}, {0, 2, 3}});
}

inline PolyMesh unit_square()
{
    return build_topology({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2, 3}});
}

/// L-shaped hexagon: star-shaped with respect to its centroid.
inline PolyMesh l_shape()
{
    return build_topology({{0, 0}, {1, 0}, {1, 0.5}, {0.5, 0.5}, {0.5, 1}, {0, 1}}, {{0, 1, 2, 3, 4, 5}});
}

inline std::vector<MeshFamily> all_families()
{
    return {MeshFamily::triangular, MeshFamily::cartesian, MeshFamily::hexagonal, MeshFamily::kershaw};
}

inline std::shared_ptr<const PolyMesh> shared(PolyMesh m) { return std::make_shared<const PolyMesh>(std::move(m)); }

inline HhoSpace make_space(PolyMesh mesh, int k, bool orthonormal = false)
{
    DiscretizationOptions o;
    o.k = k;
    o.orthonormal_cell_basis = orthonormal;
    return HhoSpace(shared(std::move(mesh)), o);
}

/// Least-squares slope of log(e) against log(h).
inline double fitted_slope(const std::vector<double>& h, const std::vector<double>& e)
{
    const std::size_t n = h.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::log(h[i]), y = std::log(e[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Monomial x^a y^b as a field.
inline ScalarField monomial(int a, int b)
{
    return [a, b](const Point& p) { return std::pow(p.x(), a) * std::pow(p.y(), b); };
}

} // namespace hho::test
