#include "hho/quadrature.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "hho/errors.hpp"

namespace hho {

double QuadratureRule::measure() const noexcept
{
    double m = 0.0;
    for (double wq : w)
        m += wq;
    return m;
}

namespace {

GaussLegendre01 compute_gauss_legendre(int n)
{
    // Newton iteration on P_n from the standard cosine initial guesses.
    auto legendre = [n](double x, double& pn, double& dpn) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = pk;
        }
        pn = p1;
        dpn = n * (x * p1 - p0) / (x * x - 1.0);
    };
    GaussLegendre01 rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pn = 0.0, dpn = 1.0;
        for (int iter = 0; iter < 100; ++iter) {
            legendre(x, pn, dpn);
            const double dx = pn / dpn;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        legendre(x, pn, dpn);
        rule.nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 - x);
        rule.weights[static_cast<std::size_t>(i)] = 1.0 / ((1.0 - x * x) * dpn * dpn);
    }
    return rule;
}

} // namespace

const GaussLegendre01& gauss_legendre_01(int npoints)
{
    constexpr int max_points = 64;
    if (npoints < 1 || npoints > max_points)
        throw std::invalid_argument("Gauss-Legendre point count out of range");
    static std::vector<GaussLegendre01> cache(max_points + 1);
    static std::once_flag flags[max_points + 1];
    std::call_once(flags[npoints], [npoints] { cache[static_cast<std::size_t>(npoints)] = compute_gauss_legendre(npoints); });
    return cache[static_cast<std::size_t>(npoints)];
}

QuadratureRule quadrature_triangle(const Triangle& t, int degree)
{
    if (degree < 0)
        throw std::invalid_argument("quadrature degree must be >= 0");
    if (!(t.area > 0.0))
        throw SolverError("quadrature requested on a degenerate simplex");
    // x = p0 + s((1-u)(p1-p0) + u(p2-p0)); Jacobian 2|T| s. The radial factor
    // raises the degree in s by one.
    const auto& radial = gauss_legendre_01((degree + 1) / 2 + 1);
    const auto& angular = gauss_legendre_01(degree / 2 + 1);
    const Point& p0 = t.vertices[0];
    const Point e1 = t.vertices[1] - p0;
    const Point e2 = t.vertices[2] - p0;

    QuadratureRule rule;
    rule.degree = degree;
    const std::size_t n = radial.nodes.size() * angular.nodes.size();
    rule.x.reserve(n);
    rule.y.reserve(n);
    rule.w.reserve(n);
    for (std::size_t a = 0; a < radial.nodes.size(); ++a) {
        const double s = radial.nodes[a];
        for (std::size_t b = 0; b < angular.nodes.size(); ++b) {
            const double u = angular.nodes[b];
            const Point p = p0 + s * ((1.0 - u) * e1 + u * e2);
            rule.x.push_back(p.x());
            rule.y.push_back(p.y());
            rule.w.push_back(2.0 * t.area * s * radial.weights[a] * angular.weights[b]);
        }
    }
    return rule;
}

QuadratureRule quadrature_cell(const Cell& cell, int degree)
{
    QuadratureRule rule;
    rule.degree = degree;
    for (const auto& t : cell.simplices) {
        const auto sub = quadrature_triangle(t, degree);
        rule.x.insert(rule.x.end(), sub.x.begin(), sub.x.end());
        rule.y.insert(rule.y.end(), sub.y.begin(), sub.y.end());
        rule.w.insert(rule.w.end(), sub.w.begin(), sub.w.end());
    }
    return rule;
}

QuadratureRule quadrature_face(const Face& face, int degree)
{
    if (degree < 0)
        throw std::invalid_argument("quadrature degree must be >= 0");
    if (!(face.diameter > 0.0))
        throw SolverError("quadrature requested on a degenerate face");
    const auto& gl = gauss_legendre_01(degree / 2 + 1);
    const Point start = face.midpoint - 0.5 * face.diameter * face.tangent;
    const Point dir = face.diameter * face.tangent;
    QuadratureRule rule;
    rule.degree = degree;
    for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
        const Point p = start + gl.nodes[q] * dir;
        rule.x.push_back(p.x());
        rule.y.push_back(p.y());
        rule.w.push_back(face.diameter * gl.weights[q]);
    }
    return rule;
}

} // namespace hho
