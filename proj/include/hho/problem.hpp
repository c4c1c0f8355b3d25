#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hho/basis.hpp"

namespace hho {

/// -M(||grad u||^2) Lap u = f(x, u) in the unit square, u = 0 on the boundary.
struct ProblemSpec {
    std::string name;
    std::string description;
    /// Human-readable form of M, recorded in report metadata.
    std::string coefficient_formula;

    std::function<double(double)> coefficient;            // M(d)
    std::function<double(double)> coefficient_derivative; // M'(d)
    std::function<double(const Point&, double)> load;     // f(x, u)
    std::function<double(const Point&, double)> load_du;  // df/du

    ScalarField exact;           // optional
    VectorField exact_gradient;  // optional

    double m0 = 1.0;          // lower bound of M
    double lipschitz_a = 0.0; // Lipschitz constant of f in u

    bool has_exact() const noexcept { return static_cast<bool>(exact); }

    /// f(., 0) as a field.
    ScalarField load_at_zero() const;

    /// Checks that the callables are set, m0 > 0, M >= m0 on sampled
    /// arguments, and f, f_u are finite on a sample grid. Throws
    /// std::invalid_argument naming the failed check.
    void validate() const;
};

class ProblemRegistry {
public:
    /// Validates and stores the problem. Throws std::invalid_argument on a duplicate name.
    void add(ProblemSpec problem);

    bool contains(const std::string& name) const { return problems_.count(name) != 0; }
    /// Throws std::out_of_range with the list of known names.
    const ProblemSpec& get(const std::string& name) const;
    std::vector<std::string> names() const;

private:
    std::map<std::string, ProblemSpec> problems_;
};

ProblemSpec paper_example_problem();
ProblemSpec poisson_problem();
ProblemSpec semilinear_problem();

/// paper-example, poisson and semilinear.
const ProblemRegistry& builtin_problems();

} // namespace hho
