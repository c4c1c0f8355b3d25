#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "hho/errors.hpp"
#include "hho/mesh.hpp"

namespace hho {

namespace {

void require_positive(std::size_t n, const char* what)
{
    if (n == 0)
        throw std::invalid_argument(std::string(what) + ": subdivision count must be >= 1");
}

std::vector<Point> grid_vertices(std::size_t n)
{
    std::vector<Point> v;
    v.reserve((n + 1) * (n + 1));
    for (std::size_t j = 0; j <= n; ++j)
        for (std::size_t i = 0; i <= n; ++i)
            v.emplace_back(static_cast<double>(i) / static_cast<double>(n),
                           static_cast<double>(j) / static_cast<double>(n));
    return v;
}

std::vector<std::vector<std::size_t>> grid_quads(std::size_t n)
{
    auto id = [n](std::size_t i, std::size_t j) { return j * (n + 1) + i; };
    std::vector<std::vector<std::size_t>> cells;
    cells.reserve(n * n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            cells.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
    return cells;
}

// Sutherland-Hodgman against one axis-aligned half-plane, on lattice
// coordinates where every crossing lands on an integer point.
using Polygon = std::vector<std::pair<double, double>>;

Polygon clip(const Polygon& in, int axis, double bound, bool keep_above)
{
    auto coord = [axis](const std::pair<double, double>& p) { return axis == 0 ? p.first : p.second; };
    auto inside = [&](const std::pair<double, double>& p) {
        return keep_above ? coord(p) >= bound : coord(p) <= bound;
    };
    Polygon out;
    for (std::size_t i = 0; i < in.size(); ++i) {
        const auto& p = in[i];
        const auto& q = in[(i + 1) % in.size()];
        const bool pin = inside(p);
        const bool qin = inside(q);
        if (pin)
            out.push_back(p);
        if (pin != qin) {
            const double t = (bound - coord(p)) / (coord(q) - coord(p));
            out.emplace_back(p.first + t * (q.first - p.first), p.second + t * (q.second - p.second));
        }
    }
    Polygon dedup;
    for (const auto& p : out)
        if (dedup.empty() || dedup.back() != p)
            dedup.push_back(p);
    while (dedup.size() > 1 && dedup.front() == dedup.back())
        dedup.pop_back();
    return dedup;
}

} // namespace

std::string_view family_name(MeshFamily family) noexcept
{
    switch (family) {
    case MeshFamily::triangular:
        return "triangular";
    case MeshFamily::cartesian:
        return "cartesian";
    case MeshFamily::hexagonal:
        return "hexagonal";
    case MeshFamily::kershaw:
        return "kershaw";
    }
    return "unknown";
}

MeshFamily parse_family(std::string_view name)
{
    for (auto f : {MeshFamily::triangular, MeshFamily::cartesian, MeshFamily::hexagonal, MeshFamily::kershaw})
        if (family_name(f) == name)
            return f;
    throw std::invalid_argument("unknown mesh family '" + std::string(name) + "'");
}

PolyMesh generate_cartesian(std::size_t n)
{
    require_positive(n, "generate_cartesian");
    return build_topology(grid_vertices(n), grid_quads(n));
}

PolyMesh generate_triangular(std::size_t n)
{
    require_positive(n, "generate_triangular");
    auto id = [n](std::size_t i, std::size_t j) { return j * (n + 1) + i; };
    std::vector<std::vector<std::size_t>> cells;
    cells.reserve(2 * n * n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            cells.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            cells.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    return build_topology(grid_vertices(n), std::move(cells));
}

PolyMesh generate_hexagonal(std::size_t n)
{
    require_positive(n, "generate_hexagonal");
    // Pointy-top honeycomb: n columns of width 1/n, m+1 rows of centres at
    // y = j/m, m chosen so the hexagons are close to regular. On the lattice
    // (a, b) with x = a/(2n), y = b/(3m) every hexagon vertex and every clip
    // crossing is an integer point, so vertices are merged exactly.
    const std::size_t m = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(std::sqrt(3.0) * n / 1.5)));
    const double amax = 2.0 * static_cast<double>(n);
    const double bmax = 3.0 * static_cast<double>(m);

    std::map<std::pair<long, long>, std::size_t> lattice_to_vertex;
    std::vector<Point> vertices;
    std::vector<std::vector<std::size_t>> cells;

    for (std::size_t j = 0; j <= m; ++j) {
        const bool odd = (j % 2) == 1;
        const std::size_t count = odd ? n : n + 1;
        const double cy = 3.0 * static_cast<double>(j);
        for (std::size_t i = 0; i < count; ++i) {
            const double cx = 2.0 * static_cast<double>(i) + (odd ? 1.0 : 0.0);
            Polygon hex{{cx, cy - 2}, {cx + 1, cy - 1}, {cx + 1, cy + 1},
                        {cx, cy + 2}, {cx - 1, cy + 1}, {cx - 1, cy - 1}};
            hex = clip(hex, 0, 0.0, true);
            hex = clip(hex, 0, amax, false);
            hex = clip(hex, 1, 0.0, true);
            hex = clip(hex, 1, bmax, false);
            if (hex.size() < 3)
                continue;

            double twice_area = 0.0;
            for (std::size_t v = 0; v < hex.size(); ++v) {
                const auto& p = hex[v];
                const auto& q = hex[(v + 1) % hex.size()];
                twice_area += p.first * q.second - q.first * p.second;
            }
            const double area = 0.5 * twice_area / (amax * bmax);
            if (area < 1e-14)
                throw MeshError("hexagonal generator produced a degenerate clipped cell (row " + std::to_string(j) +
                                ", column " + std::to_string(i) + ", area " + std::to_string(area) + ")");

            std::vector<std::size_t> loop;
            for (const auto& p : hex) {
                const std::pair<long, long> key{std::lround(p.first), std::lround(p.second)};
                auto [it, inserted] = lattice_to_vertex.emplace(key, vertices.size());
                if (inserted)
                    vertices.emplace_back(static_cast<double>(key.first) / amax,
                                          static_cast<double>(key.second) / bmax);
                loop.push_back(it->second);
            }
            cells.push_back(std::move(loop));
        }
    }
    return build_topology(std::move(vertices), std::move(cells));
}

PolyMesh generate_kershaw(std::size_t n, double distortion)
{
    if (n < 2)
        throw std::invalid_argument("generate_kershaw: subdivision count must be >= 2");
    if (!(distortion >= 0.0 && distortion < 1.0))
        throw std::invalid_argument("generate_kershaw: distortion must lie in [0, 1)");

    // y' = y + distortion * Z(x) * S(y), with Z a two-period zigzag in [-1, 1]
    // and S(y) = min(y, 1 - y). |dS/dy| = 1 keeps every grid column strictly
    // increasing in y for distortion < 1, so each cell is a trapezoid with two
    // vertical sides and therefore convex. Boundary vertices do not move.
    auto zigzag = [](double x) {
        const double t = 2.0 * x;
        return 1.0 - 4.0 * std::abs(t - std::floor(t) - 0.5);
    };
    auto vertices = grid_vertices(n);
    for (std::size_t j = 0; j <= n; ++j)
        for (std::size_t i = 0; i <= n; ++i) {
            Point& p = vertices[j * (n + 1) + i];
            const std::size_t layer = std::min(j, n - j);
            const double s = static_cast<double>(layer) / static_cast<double>(n);
            p.y() += distortion * zigzag(p.x()) * s;
        }

    auto cells = grid_quads(n);
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const auto& loop = cells[c];
        for (std::size_t v = 0; v < loop.size(); ++v) {
            const Point& a = vertices[loop[v]];
            const Point& b = vertices[loop[(v + 1) % loop.size()]];
            const Point& d = vertices[loop[(v + 2) % loop.size()]];
            const Point e1 = b - a;
            const Point e2 = d - b;
            if (!(e1.x() * e2.y() - e1.y() * e2.x() > 0.0))
                throw MeshError("kershaw cell " + std::to_string(c) + " is not strictly convex");
        }
    }
    return build_topology(std::move(vertices), std::move(cells));
}

PolyMesh generate(MeshFamily family, std::size_t n, double distortion)
{
    switch (family) {
    case MeshFamily::triangular:
        return generate_triangular(n);
    case MeshFamily::cartesian:
        return generate_cartesian(n);
    case MeshFamily::hexagonal:
        return generate_hexagonal(n);
    case MeshFamily::kershaw:
        return generate_kershaw(n, distortion);
    }
    throw std::invalid_argument("unknown mesh family");
}

std::size_t family_level_n(MeshFamily family, int level)
{
    (void)family;
    if (level < 1 || level > 12)
        throw std::invalid_argument("refinement levels are numbered from 1 to 12");
    return std::size_t{16} << (level - 1);
}

std::size_t family_max_faces(MeshFamily family) noexcept
{
    switch (family) {
    case MeshFamily::triangular:
        return 3;
    case MeshFamily::cartesian:
    case MeshFamily::kershaw:
        return 4;
    case MeshFamily::hexagonal:
        return 6;
    }
    return 0;
}

} // namespace hho
