#include "hho/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace hho::kernels {

namespace {

struct Table {
    Isa isa;
    double (*dot)(const double*, const double*, const double*, std::size_t) noexcept;
    void (*gram)(const double*, std::size_t, const double*, std::size_t, const double*, std::size_t,
                 double*) noexcept;
    void (*mono2)(const double*, const double*, std::size_t, int, double*) noexcept;
    void (*mono1)(const double*, std::size_t, int, double*) noexcept;
};

constexpr Table scalar_table{Isa::scalar, scalar::weighted_dot, scalar::weighted_gram, scalar::monomials_2d,
                             scalar::monomials_1d};
#if defined(HHO_HAVE_AVX2)
constexpr Table avx2_table{Isa::avx2, avx2::weighted_dot, avx2::weighted_gram, avx2::monomials_2d,
                           avx2::monomials_1d};
#endif
#if defined(HHO_HAVE_NEON)
constexpr Table neon_table{Isa::neon, neon::weighted_dot, neon::weighted_gram, neon::monomials_2d,
                           neon::monomials_1d};
#endif

bool cpu_has_avx2() noexcept
{
#if defined(HHO_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Table* initial_table() noexcept
{
    const char* env = std::getenv("HHO_KERNELS");
    if (env != nullptr && std::strcmp(env, "scalar") == 0)
        return &scalar_table;
#if defined(HHO_HAVE_AVX2)
    if (cpu_has_avx2())
        return &avx2_table;
#endif
#if defined(HHO_HAVE_NEON)
    return &neon_table;
#else
    return &scalar_table;
#endif
}

const Table*& current() noexcept
{
    static const Table* table = initial_table();
    return table;
}

} // namespace

Isa active_isa() noexcept { return current()->isa; }

bool isa_supported(Isa isa) noexcept
{
    switch (isa) {
    case Isa::scalar:
        return true;
    case Isa::avx2:
        return cpu_has_avx2();
    case Isa::neon:
#if defined(HHO_HAVE_NEON)
        return true;
#else
        return false;
#endif
    }
    return false;
}

void set_isa(Isa isa)
{
    if (!isa_supported(isa))
        throw std::invalid_argument("kernel instruction set not supported on this CPU");
    switch (isa) {
#if defined(HHO_HAVE_AVX2)
    case Isa::avx2:
        current() = &avx2_table;
        return;
#endif
#if defined(HHO_HAVE_NEON)
    case Isa::neon:
        current() = &neon_table;
        return;
#endif
    default:
        current() = &scalar_table;
    }
}

std::string_view isa_name(Isa isa) noexcept
{
    switch (isa) {
    case Isa::avx2:
        return "avx2";
    case Isa::neon:
        return "neon";
    default:
        return "scalar";
    }
}

double weighted_dot(const double* w, const double* a, const double* b, std::size_t nq) noexcept
{
    return current()->dot(w, a, b, nq);
}

void weighted_gram(const double* w, std::size_t nq, const double* a, std::size_t na, const double* b,
                   std::size_t nb, double* out) noexcept
{
    current()->gram(w, nq, a, na, b, nb, out);
}

void monomials_2d(const double* xi, const double* eta, std::size_t nq, int degree, double* out) noexcept
{
    current()->mono2(xi, eta, nq, degree, out);
}

void monomials_1d(const double* s, std::size_t nq, int degree, double* out) noexcept
{
    current()->mono1(s, nq, degree, out);
}

} // namespace hho::kernels
