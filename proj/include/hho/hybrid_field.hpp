#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "hho/basis.hpp"
#include "hho/space.hpp"

namespace hho {

/// Coefficients of a discrete hybrid function: one P^k(T) block per cell
/// and one P^k(F) block per face, in the bases held by an HhoSpace.
class HybridField {
public:
    HybridField() = default;
    /// Zero field with homogeneous boundary values.
    explicit HybridField(const HhoSpace& space);

    int degree() const noexcept { return k_; }
    std::size_t n_cells() const noexcept { return cells_.size(); }
    std::size_t n_faces() const noexcept { return faces_.size(); }

    Vector& cell(std::size_t c) { return cells_.at(c); }
    const Vector& cell(std::size_t c) const { return cells_.at(c); }
    Vector& face(std::size_t f) { return faces_.at(f); }
    const Vector& face(std::size_t f) const { return faces_.at(f); }

    /// True when every boundary-face block is identically zero.
    bool homogeneous_boundary() const;

    /// [v_T; v_F1; ...; v_Fm] in the cell's face order.
    Vector local_vector(const HhoSpace& space, std::size_t cell) const;

    /// Free-unknown vector under the space's GlobalDofMap. Throws when a
    /// boundary block is non-zero (it has no free index).
    Vector to_free(const HhoSpace& space) const;
    static HybridField from_free(const HhoSpace& space, const Vector& free);

    HybridField& operator+=(const HybridField& other);
    HybridField& operator-=(const HybridField& other);
    HybridField& operator*=(double s);

private:
    std::shared_ptr<const PolyMesh> mesh_;
    int k_ = 0;
    std::vector<Vector> cells_;
    std::vector<Vector> faces_;
};

HybridField operator+(HybridField a, const HybridField& b);
HybridField operator-(HybridField a, const HybridField& b);
HybridField operator*(double s, HybridField a);

enum class BoundaryMode {
    keep, // project the trace on boundary faces as well
    zero  // force boundary-face blocks to zero (for v in H^1_0)
};

/// I_h^k v: L2 projections on every cell and face.
HybridField interpolate(const HhoSpace& space, const ScalarField& v, BoundaryMode mode = BoundaryMode::keep);

/// Cell-wise L2 projection pi_T^k v, returned as a field whose face blocks are zero.
HybridField project_cells(const HhoSpace& space, const ScalarField& v);

} // namespace hho
