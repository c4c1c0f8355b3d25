#pragma once

// Data-parallel inner loops of the quadrature layer.
//
// Every kernel has a scalar reference implementation (namespace `scalar`)
// and a SIMD variant: AVX2+FMA on x86-64 (namespace `avx2`), AdvSIMD on
// aarch64 (namespace `neon`). The unqualified entry points forward to
// whichever instruction set is active; the choice is made once at start-up
// (CPUID on x86-64) and can be forced to scalar with the environment
// variable HHO_KERNELS=scalar or through set_isa().
//
// Layout convention: a "row block" of `rows` functions sampled at `nq`
// points is stored row-major, row r occupying [r*nq, (r+1)*nq).

#include <cstddef>
#include <string_view>

namespace hho::kernels {

enum class Isa { scalar, avx2, neon };

Isa active_isa() noexcept;
bool isa_supported(Isa isa) noexcept;
/// Switch the dispatch target. Not thread-safe; intended for tests and start-up.
/// Throws std::invalid_argument when the CPU lacks the instruction set.
void set_isa(Isa isa);
std::string_view isa_name(Isa isa) noexcept;

/// sum_q w[q] * a[q] * b[q]
double weighted_dot(const double* w, const double* a, const double* b, std::size_t nq) noexcept;

/// out[i*nb + j] = sum_q w[q] * a[i*nq + q] * b[j*nq + q]
void weighted_gram(const double* w, std::size_t nq, const double* a, std::size_t na, const double* b,
                   std::size_t nb, double* out) noexcept;

/// Scaled bivariate monomials xi^p eta^q for p+q <= degree, ordered by total
/// degree then by decreasing power of xi. Writes (degree+1)(degree+2)/2 rows of nq values.
void monomials_2d(const double* xi, const double* eta, std::size_t nq, int degree, double* out) noexcept;

/// 1D monomials s^p for p <= degree; degree+1 rows of nq values.
void monomials_1d(const double* s, std::size_t nq, int degree, double* out) noexcept;

namespace scalar {
double weighted_dot(const double* w, const double* a, const double* b, std::size_t nq) noexcept;
void weighted_gram(const double* w, std::size_t nq, const double* a, std::size_t na, const double* b,
                   std::size_t nb, double* out) noexcept;
void monomials_2d(const double* xi, const double* eta, std::size_t nq, int degree, double* out) noexcept;
void monomials_1d(const double* s, std::size_t nq, int degree, double* out) noexcept;
} // namespace scalar

#if defined(HHO_HAVE_AVX2)
namespace avx2 {
double weighted_dot(const double* w, const double* a, const double* b, std::size_t nq) noexcept;
void weighted_gram(const double* w, std::size_t nq, const double* a, std::size_t na, const double* b,
                   std::size_t nb, double* out) noexcept;
void monomials_2d(const double* xi, const double* eta, std::size_t nq, int degree, double* out) noexcept;
void monomials_1d(const double* s, std::size_t nq, int degree, double* out) noexcept;
} // namespace avx2
#endif

#if defined(HHO_HAVE_NEON)
namespace neon {
double weighted_dot(const double* w, const double* a, const double* b, std::size_t nq) noexcept;
void weighted_gram(const double* w, std::size_t nq, const double* a, std::size_t na, const double* b,
                   std::size_t nb, double* out) noexcept;
void monomials_2d(const double* xi, const double* eta, std::size_t nq, int degree, double* out) noexcept;
void monomials_1d(const double* s, std::size_t nq, int degree, double* out) noexcept;
} // namespace neon
#endif

} // namespace hho::kernels
