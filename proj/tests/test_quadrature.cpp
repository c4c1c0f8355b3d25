#include <cmath>

#include <doctest.h>

#include "hho/quadrature.hpp"
#include "test_support.hpp"

using namespace hho;
using doctest::Approx;

namespace {

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

double integrate(const QuadratureRule& rule, const ScalarField& f)
{
    double s = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q)
        s += rule.w[q] * f(rule.point(q));
    return s;
}

// Radon's 7-point rule on the reference triangle, exact to degree 5.
double radon7(const Triangle& t, const ScalarField& f)
{
    const double s15 = std::sqrt(15.0);
    const double a1 = (6.0 - s15) / 21.0, b1 = (9.0 + 2.0 * s15) / 21.0;
    const double a2 = (6.0 + s15) / 21.0, b2 = (9.0 - 2.0 * s15) / 21.0;
    const double w0 = 9.0 / 40.0, w1 = (155.0 - s15) / 1200.0, w2 = (155.0 + s15) / 1200.0;
    const double bary[7][3] = {{1.0 / 3, 1.0 / 3, 1.0 / 3}, {a1, a1, b1}, {a1, b1, a1}, {b1, a1, a1},
                               {a2, a2, b2},             {a2, b2, a2}, {b2, a2, a2}};
    const double w[7] = {w0, w1, w1, w1, w2, w2, w2};
    double s = 0.0;
    for (int i = 0; i < 7; ++i) {
        const Point p = bary[i][0] * t.vertices[0] + bary[i][1] * t.vertices[1] + bary[i][2] * t.vertices[2];
        s += w[i] * f(p);
    }
    return t.area * s;
}

} // namespace

TEST_CASE("Gauss-Legendre nodes and weights on [0, 1]")
{
    for (int n = 1; n <= 20; ++n) {
        const auto& gl = gauss_legendre_01(n);
        REQUIRE(gl.nodes.size() == static_cast<std::size_t>(n));
        double wsum = 0.0;
        for (int i = 0; i < n; ++i) {
            CHECK(gl.weights[i] > 0.0);
            CHECK(gl.nodes[i] > 0.0);
            CHECK(gl.nodes[i] < 1.0);
            wsum += gl.weights[i];
        }
        CHECK(wsum == Approx(1.0).epsilon(1e-14));
        for (int p = 0; p <= 2 * n - 1; ++p) {
            double s = 0.0;
            for (int i = 0; i < n; ++i)
                s += gl.weights[i] * std::pow(gl.nodes[i], p);
            CHECK(s == Approx(1.0 / (p + 1)).epsilon(1e-14));
        }
    }
    CHECK_THROWS(gauss_legendre_01(0));
}

TEST_CASE("triangle rules integrate monomials exactly")
{
    const Triangle ref{{Point(0, 0), Point(1, 0), Point(0, 1)}, 0.5};
    for (int deg = 0; deg <= 12; ++deg) {
        const QuadratureRule rule = quadrature_triangle(ref, deg);
        CHECK(rule.degree >= deg);
        for (double w : rule.w)
            CHECK(w > 0.0);
        CHECK(rule.measure() == Approx(0.5).epsilon(1e-14));
        for (int a = 0; a <= deg; ++a)
            for (int b = 0; a + b <= deg; ++b) {
                // int_T x^a y^b = a! b! / (a + b + 2)!
                const double exact = factorial(a) * factorial(b) / factorial(a + b + 2);
                CHECK(integrate(rule, test::monomial(a, b)) == Approx(exact).epsilon(1e-13));
            }
    }
}

TEST_CASE("triangle rule agrees with Radon's 7-point rule on quintics")
{
    const Triangle t{{Point(0.2, 0.1), Point(0.9, 0.3), Point(0.4, 0.8)}, 0.0};
    Triangle tt = t;
    tt.area = 0.5 * std::abs((t.vertices[1] - t.vertices[0]).x() * (t.vertices[2] - t.vertices[0]).y()
                             - (t.vertices[1] - t.vertices[0]).y() * (t.vertices[2] - t.vertices[0]).x());
    const QuadratureRule rule = quadrature_triangle(tt, 5);
    for (int a = 0; a <= 5; ++a)
        for (int b = 0; a + b <= 5; ++b)
            CHECK(integrate(rule, test::monomial(a, b)) == Approx(radon7(tt, test::monomial(a, b))).epsilon(1e-13));
}

TEST_CASE("cell rules on the unit square")
{
    const PolyMesh m = test::unit_square();
    const QuadratureRule one = quadrature_cell(m.cell(0), 0);
    CHECK(one.measure() == Approx(1.0).epsilon(1e-14));
    const QuadratureRule rule = quadrature_cell(m.cell(0), 2);
    CHECK(integrate(rule, test::monomial(2, 0)) == Approx(1.0 / 3).epsilon(1e-14));
    const QuadratureRule high = quadrature_cell(m.cell(0), 10);
    for (int a = 0; a <= 10; ++a)
        for (int b = 0; a + b <= 10; ++b)
            CHECK(integrate(high, test::monomial(a, b)) == Approx(1.0 / ((a + 1) * (b + 1))).epsilon(1e-13));
}

TEST_CASE("x^3 y^2 on a hexagonal cell matches a refined-submesh reference")
{
    const PolyMesh hex = generate_hexagonal(3);
    const Cell* cell = nullptr;
    for (const auto& c : hex.cells())
        if (c.n_faces() == 6) {
            cell = &c;
            break;
        }
    REQUIRE(cell != nullptr);
    const ScalarField f = test::monomial(3, 2);
    const double value = integrate(quadrature_cell(*cell, 5), f);

    // Two levels of red refinement of every fan triangle, each child integrated with Radon's rule.
    double reference = 0.0;
    for (const auto& t : cell->simplices) {
        std::vector<Triangle> level{t};
        for (int r = 0; r < 2; ++r) {
            std::vector<Triangle> next;
            for (const auto& p : level) {
                const Point& a = p.vertices[0];
                const Point& b = p.vertices[1];
                const Point& c = p.vertices[2];
                const Point ab = 0.5 * (a + b), bc = 0.5 * (b + c), ca = 0.5 * (c + a);
                const double q = p.area / 4;
                next.push_back({{a, ab, ca}, q});
                next.push_back({{ab, b, bc}, q});
                next.push_back({{ca, bc, c}, q});
                next.push_back({{ab, bc, ca}, q});
            }
            level = std::move(next);
        }
        for (const auto& p : level)
            reference += radon7(p, f);
    }
    CHECK(std::abs(value - reference) <= 1e-12);
}

TEST_CASE("cell rules: positive weights and exact measure on every family")
{
    for (auto fam : test::all_families()) {
        const PolyMesh m = generate(fam, 4);
        for (const auto& c : m.cells()) {
            const QuadratureRule rule = quadrature_cell(c, 6);
            for (double w : rule.w)
                CHECK(w > 0.0);
            CHECK(rule.measure() == Approx(c.area).epsilon(1e-13));
        }
    }
}

TEST_CASE("face rules")
{
    const PolyMesh m = generate_cartesian(2);
    const Face& f = m.face(0);
    const QuadratureRule one = quadrature_face(f, 0);
    CHECK(one.measure() == Approx(0.5).epsilon(1e-15));

    // A unit-length face from (0,0) to (1,0): int_0^1 s^3 ds = 1/4.
    const PolyMesh sq = test::unit_square();
    for (const auto& face : sq.faces()) {
        if (face.midpoint.y() != 0.0)
            continue;
        const QuadratureRule r = quadrature_face(face, 3);
        CHECK(integrate(r, [](const Point& p) { return p.x() * p.x() * p.x(); }) == Approx(0.25).epsilon(1e-15));
    }
}
