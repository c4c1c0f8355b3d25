#pragma once

#include <cstddef>
#include <vector>

#include "hho/mesh.hpp"

namespace hho {

/// Points in physical coordinates, stored structure-of-arrays for the kernels.
struct QuadratureRule {
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> w;
    int degree = 0; // polynomials of total degree <= degree are integrated exactly

    std::size_t size() const noexcept { return w.size(); }
    double measure() const noexcept;
    Point point(std::size_t q) const { return {x[q], y[q]}; }
};

/// Gauss-Legendre rule with `npoints` nodes mapped to [0, 1].
struct GaussLegendre01 {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLegendre01& gauss_legendre_01(int npoints);

/// Collapsed (Duffy) Gauss product rule on a triangle, exact to `degree`, all weights positive.
QuadratureRule quadrature_triangle(const Triangle& t, int degree);

/// Union of triangle rules over the cell's fan submesh.
QuadratureRule quadrature_cell(const Cell& cell, int degree);

/// Gauss-Legendre rule on the face segment, exact to `degree`.
QuadratureRule quadrature_face(const Face& face, int degree);

} // namespace hho
