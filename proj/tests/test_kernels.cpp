#include <cstdlib>
#include <cstring>
#include <random>
#include <vector>

#include <doctest.h>

#include "hho/kernels.hpp"
#include "hho/newton.hpp"
#include "hho/norms.hpp"
#include "test_support.hpp"

using namespace hho;
namespace kn = hho::kernels;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double lo = -1.0, double hi = 1.0)
{
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v)
        x = dist(rng);
    return v;
}

struct IsaGuard {
    kn::Isa saved = kn::active_isa();
    ~IsaGuard() { kn::set_isa(saved); }
};

} // namespace

TEST_CASE("scalar dispatch is always available")
{
    IsaGuard guard;
    CHECK(kn::isa_supported(kn::Isa::scalar));
    kn::set_isa(kn::Isa::scalar);
    CHECK(kn::active_isa() == kn::Isa::scalar);
    CHECK(kn::isa_name(kn::Isa::scalar) == "scalar");
    CHECK(kn::isa_name(kn::Isa::avx2) == "avx2");
    CHECK(kn::isa_name(kn::Isa::neon) == "neon");
}

TEST_CASE("selecting an unsupported ISA throws")
{
    for (auto isa : {kn::Isa::avx2, kn::Isa::neon})
        if (!kn::isa_supported(isa))
            CHECK_THROWS_AS(kn::set_isa(isa), std::invalid_argument);
}

TEST_CASE("forced scalar through the environment")
{
    const char* env = std::getenv("HHO_KERNELS");
    if (env == nullptr || std::strcmp(env, "scalar") != 0)
        return;
    CHECK(kn::active_isa() == kn::Isa::scalar);
}

#if defined(HHO_HAVE_AVX2) || defined(HHO_HAVE_NEON)

#if defined(HHO_HAVE_AVX2)
namespace simd = hho::kernels::avx2;
constexpr kn::Isa simd_isa = kn::Isa::avx2;
#else
namespace simd = hho::kernels::neon;
constexpr kn::Isa simd_isa = kn::Isa::neon;
#endif

TEST_CASE("SIMD weighted_dot matches the scalar reference")
{
    if (!kn::isa_supported(simd_isa))
        return;
    std::mt19937_64 rng(7);
    for (std::size_t n = 0; n <= 67; ++n) {
        const auto w = random_vector(rng, n, 0.0, 1.0);
        const auto a = random_vector(rng, n);
        const auto b = random_vector(rng, n);
        const double ref = kn::scalar::weighted_dot(w.data(), a.data(), b.data(), n);
        const double simd = simd::weighted_dot(w.data(), a.data(), b.data(), n);
        double bound = 0.0;
        for (std::size_t q = 0; q < n; ++q)
            bound += std::abs(w[q] * a[q] * b[q]);
        CHECK(std::abs(ref - simd) <= 4e-16 * (n + 1) * bound);
    }
}

TEST_CASE("SIMD weighted_gram matches the scalar reference")
{
    if (!kn::isa_supported(simd_isa))
        return;
    std::mt19937_64 rng(11);
    for (std::size_t nq : {1u, 3u, 4u, 7u, 16u, 25u, 61u}) {
        for (std::size_t na : {1u, 3u, 6u, 10u}) {
            const std::size_t nb = na + 1;
            const auto w = random_vector(rng, nq, 0.0, 1.0);
            const auto a = random_vector(rng, na * nq);
            const auto b = random_vector(rng, nb * nq);
            std::vector<double> ref(na * nb), simd(na * nb);
            kn::scalar::weighted_gram(w.data(), nq, a.data(), na, b.data(), nb, ref.data());
            simd::weighted_gram(w.data(), nq, a.data(), na, b.data(), nb, simd.data());
            for (std::size_t i = 0; i < ref.size(); ++i)
                CHECK(std::abs(ref[i] - simd[i]) <= 1e-14 * static_cast<double>(nq));
        }
    }
}

TEST_CASE("SIMD monomials are bitwise equal to the scalar reference")
{
    if (!kn::isa_supported(simd_isa))
        return;
    std::mt19937_64 rng(13);
    for (std::size_t nq : {0u, 1u, 5u, 8u, 13u, 40u}) {
        const auto xi = random_vector(rng, nq);
        const auto eta = random_vector(rng, nq);
        for (int deg = 0; deg <= 5; ++deg) {
            const std::size_t rows2 = static_cast<std::size_t>((deg + 1) * (deg + 2) / 2);
            std::vector<double> r2(rows2 * nq), s2(rows2 * nq);
            kn::scalar::monomials_2d(xi.data(), eta.data(), nq, deg, r2.data());
            simd::monomials_2d(xi.data(), eta.data(), nq, deg, s2.data());
            CHECK(std::memcmp(r2.data(), s2.data(), r2.size() * sizeof(double)) == 0);

            std::vector<double> r1((deg + 1) * nq), s1((deg + 1) * nq);
            kn::scalar::monomials_1d(xi.data(), nq, deg, r1.data());
            simd::monomials_1d(xi.data(), nq, deg, s1.data());
            CHECK(std::memcmp(r1.data(), s1.data(), r1.size() * sizeof(double)) == 0);
        }
    }
}

TEST_CASE("monomial layout: total degree, then decreasing power of xi")
{
    const double xi = 2.0, eta = 3.0;
    std::vector<double> out(10);
    kn::scalar::monomials_2d(&xi, &eta, 1, 3, out.data());
    const std::vector<double> expected{1, 2, 3, 4, 6, 9, 8, 12, 18, 27};
    CHECK(out == expected);
}

TEST_CASE("full solve agrees across kernel variants")
{
    if (!kn::isa_supported(simd_isa))
        return;
    IsaGuard guard;
    double norms[2];
    int i = 0;
    for (auto isa : {kn::Isa::scalar, simd_isa}) {
        kn::set_isa(isa);
        const HhoSpace space = test::make_space(generate_hexagonal(4), 2);
        const NewtonResult r = newton_solve(space, paper_example_problem());
        REQUIRE(r.report.converged);
        norms[i++] = energy_norm(space, r.u);
    }
    CHECK(std::abs(norms[0] - norms[1]) <= 1e-12 * norms[0]);
}

#endif
