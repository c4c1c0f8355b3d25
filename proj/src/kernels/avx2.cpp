// Compiled with -mavx2 -mfma. Entered only through the dispatcher after a CPUID check.

#include "hho/kernels.hpp"

#include <immintrin.h>

namespace hho::kernels::avx2 {

namespace {

inline double hsum(__m256d v) noexcept
{
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline void scale_row(const double* src, const double* factor, double* dst, std::size_t nq) noexcept
{
    std::size_t i = 0;
    for (; i + 4 <= nq; i += 4)
        _mm256_storeu_pd(dst + i, _mm256_mul_pd(_mm256_loadu_pd(src + i), _mm256_loadu_pd(factor + i)));
    for (; i < nq; ++i)
        dst[i] = src[i] * factor[i];
}

} // namespace

double weighted_dot(const double* w, const double* a, const double* b, std::size_t nq) noexcept
{
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t q = 0;
    for (; q + 8 <= nq; q += 8) {
        const __m256d wa0 = _mm256_mul_pd(_mm256_loadu_pd(w + q), _mm256_loadu_pd(a + q));
        const __m256d wa1 = _mm256_mul_pd(_mm256_loadu_pd(w + q + 4), _mm256_loadu_pd(a + q + 4));
        acc0 = _mm256_fmadd_pd(wa0, _mm256_loadu_pd(b + q), acc0);
        acc1 = _mm256_fmadd_pd(wa1, _mm256_loadu_pd(b + q + 4), acc1);
    }
    for (; q + 4 <= nq; q += 4) {
        const __m256d wa = _mm256_mul_pd(_mm256_loadu_pd(w + q), _mm256_loadu_pd(a + q));
        acc0 = _mm256_fmadd_pd(wa, _mm256_loadu_pd(b + q), acc0);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; q < nq; ++q)
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
    const __m256d one = _mm256_set1_pd(1.0);
    std::size_t i = 0;
    for (; i + 4 <= nq; i += 4)
        _mm256_storeu_pd(out + i, one);
    for (; i < nq; ++i)
        out[i] = 1.0;
    for (int d = 1; d <= degree; ++d) {
        const std::size_t row0 = static_cast<std::size_t>(d * (d + 1) / 2);
        const std::size_t prev0 = static_cast<std::size_t>((d - 1) * d / 2);
        for (int q = 0; q <= d; ++q) {
            double* dst = out + (row0 + q) * nq;
            if (q < d)
                scale_row(out + (prev0 + q) * nq, xi, dst, nq);
            else
                scale_row(out + (prev0 + q - 1) * nq, eta, dst, nq);
        }
    }
}

void monomials_1d(const double* s, std::size_t nq, int degree, double* out) noexcept
{
    std::size_t i = 0;
    const __m256d one = _mm256_set1_pd(1.0);
    for (; i + 4 <= nq; i += 4)
        _mm256_storeu_pd(out + i, one);
    for (; i < nq; ++i)
        out[i] = 1.0;
    for (int p = 1; p <= degree; ++p)
        scale_row(out + static_cast<std::size_t>(p - 1) * nq, s, out + static_cast<std::size_t>(p) * nq, nq);
}

} // namespace hho::kernels::avx2
