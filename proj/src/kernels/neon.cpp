// AdvSIMD is part of the aarch64 baseline, so no runtime feature check is needed.

#include "hho/kernels.hpp"

#include <arm_neon.h>

namespace hho::kernels::neon {

namespace {

inline void scale_row(const double* src, const double* factor, double* dst, std::size_t nq) noexcept
{
    std::size_t i = 0;
    for (; i + 2 <= nq; i += 2)
        vst1q_f64(dst + i, vmulq_f64(vld1q_f64(src + i), vld1q_f64(factor + i)));
    for (; i < nq; ++i)
        dst[i] = src[i] * factor[i];
}

inline void fill_ones(double* out, std::size_t nq) noexcept
{
    const float64x2_t one = vdupq_n_f64(1.0);
    std::size_t i = 0;
    for (; i + 2 <= nq; i += 2)
        vst1q_f64(out + i, one);
    for (; i < nq; ++i)
        out[i] = 1.0;
}

} // namespace

double weighted_dot(const double* w, const double* a, const double* b, std::size_t nq) noexcept
{
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t q = 0;
    for (; q + 4 <= nq; q += 4) {
        const float64x2_t wa0 = vmulq_f64(vld1q_f64(w + q), vld1q_f64(a + q));
        const float64x2_t wa1 = vmulq_f64(vld1q_f64(w + q + 2), vld1q_f64(a + q + 2));
        acc0 = vfmaq_f64(acc0, wa0, vld1q_f64(b + q));
        acc1 = vfmaq_f64(acc1, wa1, vld1q_f64(b + q + 2));
    }
    for (; q + 2 <= nq; q += 2) {
        const float64x2_t wa = vmulq_f64(vld1q_f64(w + q), vld1q_f64(a + q));
        acc0 = vfmaq_f64(acc0, wa, vld1q_f64(b + q));
    }
    double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
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
    fill_ones(out, nq);
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
    fill_ones(out, nq);
    for (int p = 1; p <= degree; ++p)
        scale_row(out + static_cast<std::size_t>(p - 1) * nq, s, out + static_cast<std::size_t>(p) * nq, nq);
}

} // namespace hho::kernels::neon
