#include "hho/kernels.hpp"

namespace hho::kernels::scalar {

double weighted_dot(const double* w, const double* a, const double* b, std::size_t nq) noexcept
{
    double acc = 0.0;
    for (std::size_t q = 0; q < nq; ++q)
        acc += w[q] * a[q] * b[q];
    return acc;
}

void weighted_gram(const double* w, std::size_t nq, const double* a, std::size_t na, const double* b,
                   std::size_t nb, double* out) noexcept
{
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            out[i * nb + j] = weighted_dot(w, a + i * nq, b + j * nq, nq);
}

void monomials_2d(const double* xi, const double* eta, std::size_t nq, int degree, double* out) noexcept
{
    // Row of (p, q) with p + q = d sits at d(d+1)/2 + q.
    for (std::size_t i = 0; i < nq; ++i)
        out[i] = 1.0;
    for (int d = 1; d <= degree; ++d) {
        const std::size_t row0 = static_cast<std::size_t>(d * (d + 1) / 2);
        const std::size_t prev0 = static_cast<std::size_t>((d - 1) * d / 2);
        for (int q = 0; q <= d; ++q) {
            double* dst = out + (row0 + q) * nq;
            if (q < d) {
                // xi * (p-1, q)
                const double* src = out + (prev0 + q) * nq;
                for (std::size_t i = 0; i < nq; ++i)
                    dst[i] = src[i] * xi[i];
            } else {
                const double* src = out + (prev0 + q - 1) * nq;
                for (std::size_t i = 0; i < nq; ++i)
                    dst[i] = src[i] * eta[i];
            }
        }
    }
}

void monomials_1d(const double* s, std::size_t nq, int degree, double* out) noexcept
{
    for (std::size_t i = 0; i < nq; ++i)
        out[i] = 1.0;
    for (int p = 1; p <= degree; ++p) {
        const double* src = out + static_cast<std::size_t>(p - 1) * nq;
        double* dst = out + static_cast<std::size_t>(p) * nq;
        for (std::size_t i = 0; i < nq; ++i)
            dst[i] = src[i] * s[i];
    }
}

} // namespace hho::kernels::scalar
