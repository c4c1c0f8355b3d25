#include "hho/basis.hpp"

#include <stdexcept>

#include "hho/errors.hpp"
#include "hho/kernels.hpp"

namespace hho {

CellBasis::CellBasis(const Cell& cell, int degree)
    : degree_(degree), center_(cell.centroid), scale_(cell.diameter)
{
    if (degree < 0)
        throw std::invalid_argument("cell basis degree must be >= 0");
}

CellBasis CellBasis::orthonormalized(const Cell& cell, int degree, const QuadratureRule& rule)
{
    if (rule.degree < 2 * degree)
        throw std::invalid_argument("orthonormalization needs a rule exact to twice the basis degree");
    CellBasis basis(cell, degree);
    const Matrix mass = mass_matrix(basis.values(rule), rule);
    Eigen::LLT<Matrix> llt(mass);
    if (llt.info() != Eigen::Success)
        throw SolverError("cell mass matrix is not positive definite");
    const Matrix lower = llt.matrixL();
    basis.transform_ = lower.triangularView<Eigen::Lower>().solve(Matrix::Identity(mass.rows(), mass.cols()));
    return basis;
}

RowMatrix CellBasis::monomials(const double* x, const double* y, std::size_t n, int degree) const
{
    std::vector<double> xi(n), eta(n);
    const double inv = 1.0 / scale_;
    for (std::size_t q = 0; q < n; ++q) {
        xi[q] = (x[q] - center_.x()) * inv;
        eta[q] = (y[q] - center_.y()) * inv;
    }
    RowMatrix m(static_cast<Eigen::Index>(cell_basis_size(degree)), static_cast<Eigen::Index>(n));
    kernels::monomials_2d(xi.data(), eta.data(), n, degree, m.data());
    return m;
}

RowMatrix CellBasis::apply_transform(RowMatrix m) const
{
    if (transform_.size() == 0)
        return m;
    return transform_ * m;
}

RowMatrix CellBasis::values(const double* x, const double* y, std::size_t n) const
{
    return apply_transform(monomials(x, y, n, degree_));
}

RowMatrix CellBasis::values(const QuadratureRule& rule) const
{
    return values(rule.x.data(), rule.y.data(), rule.size());
}

void CellBasis::gradients(const QuadratureRule& rule, RowMatrix& dx, RowMatrix& dy) const
{
    const std::size_t nq = rule.size();
    const auto nb = static_cast<Eigen::Index>(size());
    const auto nqi = static_cast<Eigen::Index>(nq);
    dx = RowMatrix::Zero(nb, nqi);
    dy = RowMatrix::Zero(nb, nqi);
    if (degree_ == 0)
        return;
    // Derivatives of degree-d monomials are multiples of degree-(d-1) ones.
    const RowMatrix lower = monomials(rule.x.data(), rule.y.data(), nq, degree_ - 1);
    const double inv = 1.0 / scale_;
    for (int d = 1; d <= degree_; ++d) {
        for (int q = 0; q <= d; ++q) {
            const int p = d - q;
            const Eigen::Index row = d * (d + 1) / 2 + q;
            if (p > 0)
                dx.row(row) = (p * inv) * lower.row((d - 1) * d / 2 + q);
            if (q > 0)
                dy.row(row) = (q * inv) * lower.row((d - 1) * d / 2 + q - 1);
        }
    }
    if (transform_.size() != 0) {
        dx = transform_ * dx;
        dy = transform_ * dy;
    }
}

Vector CellBasis::values_at(const Point& p) const
{
    const double x = p.x();
    const double y = p.y();
    const RowMatrix v = values(&x, &y, 1);
    return v.col(0);
}

double CellBasis::evaluate(const Vector& coeffs, const Point& p) const
{
    const Vector v = values_at(p);
    return v.head(coeffs.size()).dot(coeffs);
}

FaceBasis::FaceBasis(const Face& face, int degree)
    : degree_(degree), midpoint_(face.midpoint), tangent_(face.tangent), half_length_(0.5 * face.diameter)
{
    if (degree < 0)
        throw std::invalid_argument("face basis degree must be >= 0");
}

RowMatrix FaceBasis::values(const QuadratureRule& rule) const
{
    const std::size_t nq = rule.size();
    std::vector<double> s(nq);
    for (std::size_t q = 0; q < nq; ++q)
        s[q] = ((rule.x[q] - midpoint_.x()) * tangent_.x() + (rule.y[q] - midpoint_.y()) * tangent_.y()) /
               half_length_;
    RowMatrix m(static_cast<Eigen::Index>(size()), static_cast<Eigen::Index>(nq));
    kernels::monomials_1d(s.data(), nq, degree_, m.data());
    return m;
}

Vector FaceBasis::values_at(const Point& p) const
{
    const double s = (p - midpoint_).dot(tangent_) / half_length_;
    Vector v(static_cast<Eigen::Index>(size()));
    double power = 1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i, power *= s)
        v[i] = power;
    return v;
}

double FaceBasis::evaluate(const Vector& coeffs, const Point& p) const
{
    return values_at(p).head(coeffs.size()).dot(coeffs);
}

} // namespace hho
