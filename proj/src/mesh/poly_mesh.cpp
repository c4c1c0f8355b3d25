#include "hho/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include "hho/errors.hpp"

namespace hho {

namespace {

double cross(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }

double signed_area(const std::vector<Point>& pts, const std::vector<std::size_t>& loop)
{
    double twice = 0.0;
    for (std::size_t i = 0; i < loop.size(); ++i)
        twice += cross(pts[loop[i]], pts[loop[(i + 1) % loop.size()]]);
    return 0.5 * twice;
}

// Area-weighted centroid by the shoelace formula, taken relative to the
// first vertex to limit cancellation.
Point polygon_centroid(const std::vector<Point>& pts, const std::vector<std::size_t>& loop, double area)
{
    const Point origin = pts[loop[0]];
    Point acc = Point::Zero();
    for (std::size_t i = 0; i < loop.size(); ++i) {
        const Point a = pts[loop[i]] - origin;
        const Point b = pts[loop[(i + 1) % loop.size()]] - origin;
        acc += (a + b) * cross(a, b);
    }
    return origin + acc / (6.0 * area);
}

std::string cell_tag(std::size_t c) { return "cell " + std::to_string(c); }

} // namespace

std::vector<std::vector<std::size_t>> PolyMesh::cell_vertex_lists() const
{
    std::vector<std::vector<std::size_t>> out;
    out.reserve(cells_.size());
    for (const auto& c : cells_)
        out.push_back(c.vertices);
    return out;
}

PolyMesh build_topology(std::vector<Point> vertices, std::vector<std::vector<std::size_t>> cells)
{
    if (vertices.empty() || cells.empty())
        throw MeshError("mesh has no vertices or no cells");

    PolyMesh mesh;
    mesh.vertices_ = std::move(vertices);
    const auto& pts = mesh.vertices_;

    for (const auto& p : pts)
        if (!std::isfinite(p.x()) || !std::isfinite(p.y()))
            throw MeshError("non-finite vertex coordinate");

    mesh.bbox_min_ = pts[0];
    mesh.bbox_max_ = pts[0];
    for (const auto& p : pts) {
        mesh.bbox_min_ = mesh.bbox_min_.cwiseMin(p);
        mesh.bbox_max_ = mesh.bbox_max_.cwiseMax(p);
    }
    const double length_scale = (mesh.bbox_max_ - mesh.bbox_min_).norm();

    // Sorted vertex pair -> face id.
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_to_face;

    mesh.cells_.resize(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
        Cell& cell = mesh.cells_[c];
        cell.vertices = std::move(cells[c]);
        const auto& loop = cell.vertices;
        const std::size_t m = loop.size();
        if (m < 3)
            throw MeshError(cell_tag(c) + " has fewer than 3 vertices");
        for (auto v : loop)
            if (v >= pts.size())
                throw MeshError(cell_tag(c) + " references vertex " + std::to_string(v) + " out of range");

        cell.area = signed_area(pts, loop);
        if (!(cell.area > 0.0))
            throw MeshError(cell_tag(c) + " is clockwise or degenerate (signed area " + std::to_string(cell.area) +
                            ")");
        cell.centroid = polygon_centroid(pts, loop, cell.area);

        double diam = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                diam = std::max(diam, (pts[loop[i]] - pts[loop[j]]).norm());
        cell.diameter = diam;

        cell.faces.resize(m);
        cell.normals.resize(m);
        cell.simplices.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t va = loop[i];
            const std::size_t vb = loop[(i + 1) % m];
            const Point edge = pts[vb] - pts[va];
            const double len = edge.norm();
            if (!(len > 1e-14 * length_scale))
                throw MeshError(cell_tag(c) + " has a zero-length edge at vertex " + std::to_string(va));
            cell.normals[i] = Point(edge.y(), -edge.x()) / len;

            const auto key = std::minmax(va, vb);
            auto it = edge_to_face.find({key.first, key.second});
            if (it == edge_to_face.end()) {
                Face f;
                f.vertices = {va, vb};
                f.cells = {c, c};
                f.n_cells = 1;
                f.diameter = len;
                f.midpoint = 0.5 * (pts[va] + pts[vb]);
                f.tangent = edge / len;
                f.normal = cell.normals[i];
                edge_to_face.emplace(std::make_pair(key.first, key.second), mesh.faces_.size());
                cell.faces[i] = mesh.faces_.size();
                mesh.faces_.push_back(f);
            } else {
                Face& f = mesh.faces_[it->second];
                if (f.n_cells == 2)
                    throw MeshError("non-manifold edge (" + std::to_string(key.first) + ", " +
                                    std::to_string(key.second) + ") shared by more than two cells");
                if (f.vertices[0] == va)
                    throw MeshError(cell_tag(c) + " traverses edge (" + std::to_string(va) + ", " +
                                    std::to_string(vb) + ") in the same direction as " + cell_tag(f.cells[0]) +
                                    "; overlapping or inconsistently oriented cells");
                f.cells[1] = c;
                f.n_cells = 2;
                cell.faces[i] = it->second;
            }

            Triangle& t = cell.simplices[i];
            t.vertices = {cell.centroid, pts[va], pts[vb]};
            t.area = 0.5 * cross(pts[va] - cell.centroid, pts[vb] - cell.centroid);
            if (!(t.area > 1e-14 * cell.area))
                throw MeshError(cell_tag(c) + " is not star-shaped with respect to its centroid (sub-triangle " +
                                std::to_string(i) + " has area " + std::to_string(t.area) + ")");
        }
        mesh.h_ = std::max(mesh.h_, cell.diameter);
    }

    for (std::size_t f = 0; f < mesh.faces_.size(); ++f)
        (mesh.faces_[f].is_boundary() ? mesh.boundary_faces_ : mesh.interior_faces_).push_back(f);

    return mesh;
}

MeshQuality measure_quality(const PolyMesh& mesh)
{
    MeshQuality q;
    q.h = mesh.h();
    q.min_face_to_cell_ratio = std::numeric_limits<double>::infinity();
    q.min_cell_diameter = std::numeric_limits<double>::infinity();
    q.min_cell_area = std::numeric_limits<double>::infinity();
    for (const auto& cell : mesh.cells()) {
        Point closure = Point::Zero();
        for (std::size_t i = 0; i < cell.n_faces(); ++i) {
            const Face& f = mesh.face(cell.faces[i]);
            const double r = f.diameter / cell.diameter;
            q.min_face_to_cell_ratio = std::min(q.min_face_to_cell_ratio, r);
            q.max_face_to_cell_ratio = std::max(q.max_face_to_cell_ratio, r);
            closure += f.diameter * cell.normals[i];
        }
        q.max_closure_defect = std::max(q.max_closure_defect, closure.norm());
        q.max_faces_per_cell = std::max(q.max_faces_per_cell, cell.n_faces());
        q.total_area += cell.area;
        q.min_cell_diameter = std::min(q.min_cell_diameter, cell.diameter);
        q.max_cell_diameter = std::max(q.max_cell_diameter, cell.diameter);
        q.min_cell_area = std::min(q.min_cell_area, cell.area);
    }
    return q;
}

} // namespace hho
