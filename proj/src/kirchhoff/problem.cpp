#include "hho/problem.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hho {

namespace {

// u = x(1-x)y(1-y) and -Lap u = 2(x(1-x) + y(1-y)).
double bubble(const Point& p) { return p.x() * (1.0 - p.x()) * p.y() * (1.0 - p.y()); }

Point bubble_gradient(const Point& p)
{
    return {(1.0 - 2.0 * p.x()) * p.y() * (1.0 - p.y()), p.x() * (1.0 - p.x()) * (1.0 - 2.0 * p.y())};
}

double bubble_laplacian_neg(const Point& p) { return 2.0 * (p.x() * (1.0 - p.x()) + p.y() * (1.0 - p.y())); }

} // namespace

ScalarField ProblemSpec::load_at_zero() const
{
    auto f = load;
    return [f](const Point& p) { return f(p, 0.0); };
}

void ProblemSpec::validate() const
{
    auto fail = [this](const std::string& what) {
        throw std::invalid_argument("problem '" + name + "': " + what);
    };
    if (name.empty())
        throw std::invalid_argument("problem has no name");
    if (!coefficient || !coefficient_derivative || !load || !load_du)
        fail("coefficient, its derivative, load and load derivative are required");
    if (!(m0 > 0.0) || !std::isfinite(m0))
        fail("m0 must be positive");
    if (!(lipschitz_a >= 0.0) || !std::isfinite(lipschitz_a))
        fail("Lipschitz constant must be non-negative");
    if (static_cast<bool>(exact) != static_cast<bool>(exact_gradient))
        fail("exact solution and exact gradient must be given together");

    for (int i = 0; i <= 100; ++i) {
        const double d = 0.1 * i;
        const double m = coefficient(d);
        if (!std::isfinite(m) || m < m0 || !std::isfinite(coefficient_derivative(d))) {
            std::ostringstream os;
            os << "M(" << d << ") = " << m << " violates M >= m0 = " << m0;
            fail(os.str());
        }
    }
    for (int i = 0; i <= 8; ++i)
        for (int j = 0; j <= 8; ++j)
            for (double u : {-1.0, 0.0, 0.5, 1.0}) {
                const Point p(i / 8.0, j / 8.0);
                if (!std::isfinite(load(p, u)) || !std::isfinite(load_du(p, u))) {
                    std::ostringstream os;
                    os << "f or f_u not finite at (" << p.x() << ", " << p.y() << "), u = " << u;
                    fail(os.str());
                }
            }
}

void ProblemRegistry::add(ProblemSpec problem)
{
    problem.validate();
    if (contains(problem.name))
        throw std::invalid_argument("problem '" + problem.name + "' is already registered");
    const std::string key = problem.name;
    problems_.emplace(key, std::move(problem));
}

const ProblemSpec& ProblemRegistry::get(const std::string& name) const
{
    const auto it = problems_.find(name);
    if (it == problems_.end()) {
        std::string known;
        for (const auto& n : names())
            known += (known.empty() ? "" : ", ") + n;
        throw std::out_of_range("unknown problem '" + name + "' (known: " + known + ")");
    }
    return it->second;
}

std::vector<std::string> ProblemRegistry::names() const
{
    std::vector<std::string> out;
    for (const auto& [name, p] : problems_)
        out.push_back(name);
    return out;
}

ProblemSpec paper_example_problem()
{
    ProblemSpec p;
    p.name = "paper-example";
    p.description = "u = x(1-x)y(1-y), M(d) = 1 + d, f manufactured with ||grad u||^2 = 1/45";
    p.coefficient_formula = "1 + d";
    p.coefficient = [](double d) { return 1.0 + d; };
    p.coefficient_derivative = [](double) { return 1.0; };
    p.load = [](const Point& x, double) { return (46.0 / 45.0) * bubble_laplacian_neg(x); };
    p.load_du = [](const Point&, double) { return 0.0; };
    p.exact = bubble;
    p.exact_gradient = bubble_gradient;
    p.m0 = 1.0;
    p.lipschitz_a = 0.0;
    return p;
}

ProblemSpec poisson_problem()
{
    ProblemSpec p;
    p.name = "poisson";
    p.description = "u = x(1-x)y(1-y), M = 1, f = -Lap u";
    p.coefficient_formula = "1";
    p.coefficient = [](double) { return 1.0; };
    p.coefficient_derivative = [](double) { return 0.0; };
    p.load = [](const Point& x, double) { return bubble_laplacian_neg(x); };
    p.load_du = [](const Point&, double) { return 0.0; };
    p.exact = bubble;
    p.exact_gradient = bubble_gradient;
    p.m0 = 1.0;
    p.lipschitz_a = 0.0;
    return p;
}

ProblemSpec semilinear_problem()
{
    ProblemSpec p;
    p.name = "semilinear";
    p.description = "u = x(1-x)y(1-y), M = 1, f = sin(u) + g";
    p.coefficient_formula = "1";
    p.coefficient = [](double) { return 1.0; };
    p.coefficient_derivative = [](double) { return 0.0; };
    p.load = [](const Point& x, double u) { return std::sin(u) + bubble_laplacian_neg(x) - std::sin(bubble(x)); };
    p.load_du = [](const Point&, double u) { return std::cos(u); };
    p.exact = bubble;
    p.exact_gradient = bubble_gradient;
    p.m0 = 1.0;
    p.lipschitz_a = 1.0;
    return p;
}

const ProblemRegistry& builtin_problems()
{
    static const ProblemRegistry registry = [] {
        ProblemRegistry r;
        r.add(paper_example_problem());
        r.add(poisson_problem());
        r.add(semilinear_problem());
        return r;
    }();
    return registry;
}

} // namespace hho
