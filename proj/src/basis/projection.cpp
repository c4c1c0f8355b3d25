#include <stdexcept>

#include "hho/basis.hpp"
#include "hho/errors.hpp"
#include "hho/kernels.hpp"

namespace hho {

Matrix gram_matrix(const RowMatrix& a, const RowMatrix& b, const QuadratureRule& rule)
{
    const auto nq = rule.size();
    if (static_cast<std::size_t>(a.cols()) != nq || static_cast<std::size_t>(b.cols()) != nq)
        throw std::invalid_argument("gram_matrix: sample count does not match the rule");
    RowMatrix out(a.rows(), b.rows());
    kernels::weighted_gram(rule.w.data(), nq, a.data(), static_cast<std::size_t>(a.rows()), b.data(),
                           static_cast<std::size_t>(b.rows()), out.data());
    return out;
}

Matrix weighted_gram_matrix(const RowMatrix& a, const RowMatrix& b, const QuadratureRule& rule,
                            const std::vector<double>& pointwise)
{
    const auto nq = rule.size();
    if (pointwise.size() != nq)
        throw std::invalid_argument("weighted_gram_matrix: pointwise weight count does not match the rule");
    std::vector<double> w(nq);
    for (std::size_t q = 0; q < nq; ++q)
        w[q] = rule.w[q] * pointwise[q];
    RowMatrix out(a.rows(), b.rows());
    kernels::weighted_gram(w.data(), nq, a.data(), static_cast<std::size_t>(a.rows()), b.data(),
                           static_cast<std::size_t>(b.rows()), out.data());
    return out;
}

Matrix mass_matrix(const RowMatrix& values, const QuadratureRule& rule)
{
    Matrix m = gram_matrix(values, values, rule);
    // Exact symmetry; the kernel computes both triangles independently.
    return 0.5 * (m + m.transpose());
}

namespace {

Vector solve_projection(const RowMatrix& values, const QuadratureRule& rule, const ScalarField& v)
{
    const std::size_t nq = rule.size();
    std::vector<double> samples(nq);
    for (std::size_t q = 0; q < nq; ++q)
        samples[q] = v(rule.point(q));
    Vector rhs(values.rows());
    for (Eigen::Index i = 0; i < values.rows(); ++i)
        rhs[i] = kernels::weighted_dot(rule.w.data(), values.row(i).data(), samples.data(), nq);
    Eigen::LLT<Matrix> llt(mass_matrix(values, rule));
    if (llt.info() != Eigen::Success)
        throw SolverError("singular mass matrix in L2 projection");
    return llt.solve(rhs);
}

} // namespace

Vector project_cell(const CellBasis& basis, const QuadratureRule& rule, const ScalarField& v, std::size_t n)
{
    RowMatrix values = basis.values(rule);
    if (n != 0 && n < basis.size())
        values = RowMatrix(values.topRows(static_cast<Eigen::Index>(n)));
    return solve_projection(values, rule, v);
}

Vector project_face(const FaceBasis& basis, const QuadratureRule& rule, const ScalarField& v)
{
    return solve_projection(basis.values(rule), rule, v);
}

} // namespace hho
