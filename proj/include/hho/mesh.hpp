#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace hho {

using Point = Eigen::Vector2d;

struct Face {
    std::array<std::size_t, 2> vertices{};
    /// First entry is always valid; second equals `cells[0]` for boundary faces.
    std::array<std::size_t, 2> cells{};
    std::size_t n_cells = 0;
    double diameter = 0.0;
    Point midpoint = Point::Zero();
    /// Unit vector from vertices[0] to vertices[1].
    Point tangent = Point::Zero();
    /// Unit normal pointing out of cells[0].
    Point normal = Point::Zero();

    bool is_boundary() const noexcept { return n_cells == 1; }
};

struct Triangle {
    std::array<Point, 3> vertices;
    double area = 0.0;
};

struct Cell {
    /// Counterclockwise vertex loop.
    std::vector<std::size_t> vertices;
    /// faces[i] joins vertices[i] and vertices[i+1].
    std::vector<std::size_t> faces;
    /// Outward unit normal on faces[i].
    std::vector<Point> normals;
    double diameter = 0.0;
    double area = 0.0;
    Point centroid = Point::Zero();
    /// Fan triangulation from the centroid; simplices[i] is supported on faces[i].
    std::vector<Triangle> simplices;

    std::size_t n_faces() const noexcept { return faces.size(); }
};

/// Immutable 2D polytopal mesh. Built by build_topology() or one of the generators.
class PolyMesh {
public:
    PolyMesh() = default;

    const std::vector<Point>& vertices() const noexcept { return vertices_; }
    const std::vector<Cell>& cells() const noexcept { return cells_; }
    const std::vector<Face>& faces() const noexcept { return faces_; }
    const Cell& cell(std::size_t i) const { return cells_.at(i); }
    const Face& face(std::size_t i) const { return faces_.at(i); }
    std::size_t n_vertices() const noexcept { return vertices_.size(); }
    std::size_t n_cells() const noexcept { return cells_.size(); }
    std::size_t n_faces() const noexcept { return faces_.size(); }

    const std::vector<std::size_t>& boundary_faces() const noexcept { return boundary_faces_; }
    const std::vector<std::size_t>& interior_faces() const noexcept { return interior_faces_; }

    /// max_T h_T
    double h() const noexcept { return h_; }
    Point bbox_min() const noexcept { return bbox_min_; }
    Point bbox_max() const noexcept { return bbox_max_; }

    /// Cell-vertex loops exactly as supplied to build_topology().
    std::vector<std::vector<std::size_t>> cell_vertex_lists() const;

private:
    friend PolyMesh build_topology(std::vector<Point> vertices, std::vector<std::vector<std::size_t>> cells);

    std::vector<Point> vertices_;
    std::vector<Cell> cells_;
    std::vector<Face> faces_;
    std::vector<std::size_t> boundary_faces_;
    std::vector<std::size_t> interior_faces_;
    double h_ = 0.0;
    Point bbox_min_ = Point::Zero();
    Point bbox_max_ = Point::Zero();
};

/// Deduplicates faces by vertex pair, orients normals, computes diameters,
/// centroids and the fan submesh. Throws MeshError on clockwise or
/// non-star-shaped cells, zero-length edges and non-manifold edges.
PolyMesh build_topology(std::vector<Point> vertices, std::vector<std::vector<std::size_t>> cells);

enum class MeshFamily { triangular, cartesian, hexagonal, kershaw };

std::string_view family_name(MeshFamily family) noexcept;
/// Throws std::invalid_argument for unknown names.
MeshFamily parse_family(std::string_view name);

constexpr double default_kershaw_distortion = 0.6;

PolyMesh generate_cartesian(std::size_t n);
PolyMesh generate_triangular(std::size_t n);
/// Honeycomb with `n` hexagon columns, clipped to the unit square.
PolyMesh generate_hexagonal(std::size_t n);
/// Cartesian grid whose vertices are shifted vertically by a piecewise-linear
/// layered zigzag map. Cells stay convex for distortion in [0, 1).
PolyMesh generate_kershaw(std::size_t n, double distortion = default_kershaw_distortion);

PolyMesh generate(MeshFamily family, std::size_t n, double distortion = default_kershaw_distortion);

/// Subdivision parameter of refinement level `level` (1-based) of a family.
std::size_t family_level_n(MeshFamily family, int level);
/// Faces per interior cell of a family (3, 4, 6, 4).
std::size_t family_max_faces(MeshFamily family) noexcept;

struct MeshQuality {
    double h = 0.0;
    double min_face_to_cell_ratio = 0.0; // min over T, F in F_T of h_F / h_T
    double max_face_to_cell_ratio = 0.0;
    std::size_t max_faces_per_cell = 0;
    double total_area = 0.0;
    double max_closure_defect = 0.0; // max_T |sum_F |F| n_TF|
    double min_cell_diameter = 0.0;
    double max_cell_diameter = 0.0;
    double min_cell_area = 0.0;
};

MeshQuality measure_quality(const PolyMesh& mesh);

} // namespace hho
