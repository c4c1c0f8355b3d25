#pragma once

#include <cstddef>
#include <functional>

#include <Eigen/Dense>

#include "hho/mesh.hpp"
#include "hho/quadrature.hpp"

namespace hho {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
/// Basis functions sampled at quadrature points: one row per function.
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using ScalarField = std::function<double(const Point&)>;
using VectorField = std::function<Point(const Point&)>;

constexpr std::size_t cell_basis_size(int degree) noexcept
{
    return degree < 0 ? 0 : static_cast<std::size_t>((degree + 1) * (degree + 2) / 2);
}
constexpr std::size_t face_basis_size(int degree) noexcept
{
    return degree < 0 ? 0 : static_cast<std::size_t>(degree + 1);
}

/// Scaled monomials ((x - x_T)/h_T)^p ((y - y_T)/h_T)^q, p + q <= degree,
/// ordered by total degree, so the first cell_basis_size(l) functions span
/// P^l for every l <= degree. Optionally orthonormalized in L2(T) by a
/// lower-triangular (Gram-Schmidt) transform, which keeps that nesting.
class CellBasis {
public:
    CellBasis(const Cell& cell, int degree);
    /// Orthonormalized variant; `rule` must be exact to 2 * degree on the cell.
    static CellBasis orthonormalized(const Cell& cell, int degree, const QuadratureRule& rule);

    int degree() const noexcept { return degree_; }
    std::size_t size() const noexcept { return cell_basis_size(degree_); }
    const Point& center() const noexcept { return center_; }
    double scale() const noexcept { return scale_; }
    bool is_orthonormal() const noexcept { return transform_.size() != 0; }

    RowMatrix values(const QuadratureRule& rule) const;
    RowMatrix values(const double* x, const double* y, std::size_t n) const;
    void gradients(const QuadratureRule& rule, RowMatrix& dx, RowMatrix& dy) const;
    Vector values_at(const Point& p) const;
    /// Value of sum_i coeffs[i] phi_i at p; coeffs may cover a leading subset of the basis.
    double evaluate(const Vector& coeffs, const Point& p) const;

private:
    RowMatrix monomials(const double* x, const double* y, std::size_t n, int degree) const;
    RowMatrix apply_transform(RowMatrix m) const;

    int degree_;
    Point center_;
    double scale_;
    Matrix transform_; // empty for plain monomials
};

/// Scaled 1D monomials (s / (h_F/2))^p with s the arclength coordinate from the face midpoint.
class FaceBasis {
public:
    FaceBasis(const Face& face, int degree);

    int degree() const noexcept { return degree_; }
    std::size_t size() const noexcept { return face_basis_size(degree_); }

    RowMatrix values(const QuadratureRule& rule) const;
    Vector values_at(const Point& p) const;
    double evaluate(const Vector& coeffs, const Point& p) const;

private:
    int degree_;
    Point midpoint_;
    Point tangent_;
    double half_length_;
};

/// G_ij = sum_q w_q a_i(x_q) b_j(x_q)
Matrix gram_matrix(const RowMatrix& a, const RowMatrix& b, const QuadratureRule& rule);
/// Gram matrix with pointwise weights c(x_q) folded into the rule weights.
Matrix weighted_gram_matrix(const RowMatrix& a, const RowMatrix& b, const QuadratureRule& rule,
                            const std::vector<double>& pointwise);
/// M_ij = (phi_i, phi_j). The rule must be exact to twice the basis degree.
Matrix mass_matrix(const RowMatrix& values, const QuadratureRule& rule);

/// L2-orthogonal projection of v onto the first `n` functions of `basis`
/// (n = 0 means all), by a dense mass-matrix solve.
Vector project_cell(const CellBasis& basis, const QuadratureRule& rule, const ScalarField& v, std::size_t n = 0);
Vector project_face(const FaceBasis& basis, const QuadratureRule& rule, const ScalarField& v);

} // namespace hho
