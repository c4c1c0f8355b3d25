#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "hho/eigenvalue.hpp"
#include "hho/errors.hpp"
#include "hho/linear_solvers.hpp"
#include "hho/newton.hpp"
#include "hho/norms.hpp"
#include "hho/system.hpp"
#include "test_support.hpp"

using namespace hho;
using doctest::Approx;

namespace {

Vector random_vector(std::mt19937_64& rng, Eigen::Index n, double scale = 1.0)
{
    std::uniform_real_distribution<double> dist(-scale, scale);
    Vector v(n);
    for (auto& x : v)
        x = dist(rng);
    return v;
}

/// A problem whose every Jacobian block is active: M nonlinear, f depending on u.
ProblemSpec nonlinear_problem()
{
    ProblemSpec p;
    p.name = "test-nonlinear";
    p.coefficient_formula = "1 + d + d^2";
    p.coefficient = [](double d) { return 1.0 + d + d * d; };
    p.coefficient_derivative = [](double d) { return 1.0 + 2.0 * d; };
    p.load = [](const Point& x, double u) { return 1.0 + x.x() * x.y() + std::sin(u) - 0.3 * u * u * u; };
    p.load_du = [](const Point&, double u) { return std::cos(u) - 0.9 * u * u; };
    p.m0 = 1.0;
    p.lipschitz_a = 1.0;
    return p;
}

Matrix full_jacobian(const JacobianBlocks& j)
{
    const Eigen::Index n = j.size();
    Matrix out(n + 1, n + 1);
    out.topLeftCorner(n, n) = Matrix(j.A);
    out.topRightCorner(n, 1) = j.b;
    out.bottomLeftCorner(1, n) = j.c.transpose();
    out(n, n) = j.delta;
    return out;
}

Matrix finite_difference_jacobian(const KirchhoffSystem& sys, const Vector& alpha, double d)
{
    const Eigen::Index n = sys.n_free();
    Matrix out(n + 1, n + 1);
    const double step = 1e-6;
    for (Eigen::Index j = 0; j <= n; ++j) {
        // Step scaled per column by the size of the perturbed unknown.
        const double x = j < n ? alpha[j] : d;
        const double h = step * std::max(1.0, std::abs(x));
        Vector ap = alpha, am = alpha;
        double dp = d, dm = d;
        if (j < n) {
            ap[j] += h;
            am[j] -= h;
        } else {
            dp += h;
            dm -= h;
        }
        out.col(j) = (sys.residual(ap, dp) - sys.residual(am, dm)) / (2 * h);
    }
    return out;
}

} // namespace

TEST_CASE("built-in problems")
{
    const ProblemRegistry& reg = builtin_problems();
    CHECK(reg.contains("paper-example"));
    CHECK(reg.contains("poisson"));
    CHECK(reg.contains("semilinear"));
    CHECK_THROWS_AS(reg.get("nope"), std::out_of_range);

    const ProblemSpec& p = reg.get("paper-example");
    CHECK(p.load(Point(0.5, 0.5), 0.0) == Approx(46.0 / 45).epsilon(1e-15));
    CHECK(p.coefficient(1.0 / 45) == Approx(46.0 / 45).epsilon(1e-15));

    // ||grad u||^2 = 1/45 by quadrature on a fine grid.
    const PolyMesh m = generate_cartesian(8);
    double g2 = 0.0;
    for (const auto& c : m.cells()) {
        const QuadratureRule r = quadrature_cell(c, 8);
        for (std::size_t q = 0; q < r.size(); ++q)
            g2 += r.w[q] * p.exact_gradient(r.point(q)).squaredNorm();
    }
    CHECK(g2 == Approx(1.0 / 45).epsilon(1e-13));

    // -M(||grad u||^2) Lap u = f pointwise for the manufactured problems.
    for (const auto& name : reg.names()) {
        const ProblemSpec& q = reg.get(name);
        const double d = g2;
        for (const Point& x : {Point(0.2, 0.3), Point(0.5, 0.5), Point(0.9, 0.1)}) {
            const double h = 1e-4;
            const double lap = (q.exact(x + Point(h, 0)) + q.exact(x - Point(h, 0)) + q.exact(x + Point(0, h))
                                + q.exact(x - Point(0, h)) - 4 * q.exact(x))
                               / (h * h);
            CHECK(-q.coefficient(d) * lap == Approx(q.load(x, q.exact(x))).epsilon(1e-6));
        }
    }
}

TEST_CASE("registry rejects duplicates and invalid problems")
{
    ProblemRegistry reg;
    reg.add(poisson_problem());
    CHECK_THROWS_AS(reg.add(poisson_problem()), std::invalid_argument);

    ProblemSpec bad = poisson_problem();
    bad.name = "bad-m0";
    bad.coefficient = [](double d) { return 0.5 + d; };
    CHECK_THROWS_AS(reg.add(bad), std::invalid_argument);

    ProblemSpec nan_load = poisson_problem();
    nan_load.name = "nan";
    nan_load.load = [](const Point& x, double) { return x.x() > 0.5 ? std::nan("") : 1.0; };
    CHECK_THROWS_AS(nan_load.validate(), std::invalid_argument);
}

TEST_CASE("residual at zero and at a solution")
{
    const HhoSpace space = test::make_space(generate_cartesian(4), 1);
    const ProblemSpec p = paper_example_problem();
    const KirchhoffSystem sys(space, p);
    const Eigen::Index n = sys.n_free();
    const Vector F0 = sys.residual(Vector::Zero(n), 0.0);
    const Vector L0 = sys.load_vector(Vector::Zero(n));
    CHECK((F0.head(n) + L0).cwiseAbs().maxCoeff() == 0.0);
    CHECK(F0[n] == 0.0);
    // Face rows of the load are zero.
    CHECK(L0.tail(n - static_cast<Eigen::Index>(space.dofs().n_cell_unknowns())).cwiseAbs().maxCoeff() == 0.0);

    const NewtonResult r = newton_solve(sys);
    REQUIRE(r.report.converged);
    CHECK(sys.residual(r.alpha, r.d).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(std::abs(sys.nonlocal(r.alpha) - r.d) <= 1e-11);
    CHECK(std::abs(grad_recon_norm(space, r.u) * grad_recon_norm(space, r.u) - r.d) <= 1e-11);

    CHECK_THROWS_AS(sys.residual(Vector::Zero(3), 0.0), std::invalid_argument);
}

TEST_CASE("non-finite load is diagnosed with the cell")
{
    const HhoSpace space = test::make_space(generate_cartesian(2), 1);
    ProblemSpec p = poisson_problem();
    p.load = [](const Point&, double u) { return u > 10.0 ? std::nan("") : 1.0; };
    const KirchhoffSystem sys(space, p);
    Vector alpha = Vector::Zero(sys.n_free());
    alpha.head(3).setConstant(100.0);
    try {
        sys.residual(alpha, 0.0);
        FAIL("expected SolverError");
    } catch (const SolverError& e) {
        CHECK(std::string(e.what()).find("cell 0") != std::string::npos);
    }
}

TEST_CASE("Jacobian matches central finite differences")
{
    const ProblemSpec p = nonlinear_problem();
    std::mt19937_64 rng(17);
    for (std::size_t n : {2u, 4u})
        for (int k = 0; k <= 2; ++k) {
            const HhoSpace space = test::make_space(generate_cartesian(n), k);
            const KirchhoffSystem sys(space, p);
            const Vector alpha = random_vector(rng, sys.n_free(), 0.5);
            const double d = 0.3;
            const Matrix J = full_jacobian(sys.jacobian(alpha, d));
            const Matrix fd = finite_difference_jacobian(sys, alpha, d);
            CAPTURE(n);
            CAPTURE(k);
            CHECK((J - fd).norm() / J.norm() <= 1e-6);
        }
}

TEST_CASE("Jacobian blocks: f independent of u gives A = M(d) K with the Poisson pattern")
{
    const HhoSpace space = test::make_space(generate_hexagonal(3), 1);
    const ProblemSpec p = paper_example_problem();
    const KirchhoffSystem sys(space, p);
    std::mt19937_64 rng(2);
    const Vector alpha = random_vector(rng, sys.n_free());
    const double d = 0.7;
    const JacobianBlocks j = sys.jacobian(alpha, d);
    CHECK(Matrix(j.A - p.coefficient(d) * sys.stiffness()).cwiseAbs().maxCoeff() <= 1e-14 * Matrix(j.A).cwiseAbs().maxCoeff());
    CHECK(j.delta == -1.0);
    CHECK((j.b - sys.stiffness() * alpha).cwiseAbs().maxCoeff() == 0.0);
    CHECK((j.c - 2.0 * (sys.gradient_gram() * alpha)).cwiseAbs().maxCoeff() == 0.0);

    const KirchhoffSystem semi(space, semilinear_problem());
    const JacobianBlocks js = semi.jacobian(alpha, d);
    CHECK(js.A.nonZeros() == sys.stiffness().nonZeros());
    for (int o = 0; o < js.A.outerSize(); ++o) {
        SparseMatrix::InnerIterator a(js.A, o), b(sys.stiffness(), o);
        for (; a && b; ++a, ++b)
            CHECK(a.row() == b.row());
    }
}

TEST_CASE("bordered solve")
{
    std::mt19937_64 rng(4);
    SUBCASE("random SPD 5x5 against a dense factorization")
    {
        const Matrix R = random_vector(rng, 25).reshaped(5, 5);
        const Matrix A = R * R.transpose() + 5.0 * Matrix::Identity(5, 5);
        JacobianBlocks j;
        j.A = A.sparseView();
        j.b = random_vector(rng, 5);
        j.c = random_vector(rng, 5);
        const Vector rhs = random_vector(rng, 6);
        SparseDirectSolver solver;
        solver.compute(j);
        const Vector x = bordered_solve(solver, j.b, j.c, -1.0, rhs);
        Matrix full(6, 6);
        full << A, j.b, j.c.transpose(), -1.0;
        const Vector ref = full.fullPivLu().solve(rhs);
        CHECK((x - ref).cwiseAbs().maxCoeff() <= 1e-10);
        CHECK((dense_bordered_solve(j, rhs) - ref).cwiseAbs().maxCoeff() <= 1e-10);
        CHECK(bordered_solve(solver, j.b, j.c, -1.0, Vector::Zero(6)).norm() == 0.0);
    }
    SUBCASE("decoupled border")
    {
        const Matrix A = Matrix::Identity(4, 4) * 2.0;
        SparseDirectSolver solver;
        solver.compute(SparseMatrix(A.sparseView()));
        const Vector rhs = random_vector(rng, 5);
        const Vector x = bordered_solve(solver, Vector::Zero(4), Vector::Zero(4), -1.0, rhs);
        CHECK((x.head(4) - rhs.head(4) / 2.0).norm() <= 1e-15);
        CHECK(x[4] == -rhs[4]);
    }
    SUBCASE("singular Schur scalar")
    {
        SparseDirectSolver solver;
        solver.compute(SparseMatrix(Matrix::Identity(2, 2).sparseView()));
        Vector b(2), c(2);
        b << 1, 0;
        c << -1, 0; // c.z2 - delta = -1 + 1 = 0
        CHECK_THROWS_AS(bordered_solve(solver, b, c, -1.0, Vector::Ones(3)), SolverError);
    }
}

TEST_CASE("conjugate gradients on the SPD case")
{
    const HhoSpace space = test::make_space(generate_cartesian(8), 1);
    const KirchhoffSystem sys(space, paper_example_problem());
    const JacobianBlocks j = sys.jacobian(Vector::Zero(sys.n_free()), 0.1);
    std::mt19937_64 rng(8);
    const Vector r = random_vector(rng, sys.n_free());
    ConjugateGradientSolver cg;
    cg.compute(j);
    SparseDirectSolver direct;
    direct.compute(j);
    const Vector a = cg.solve(r), b = direct.solve(r);
    CHECK((a - b).norm() <= 1e-9 * b.norm());
}

TEST_CASE("static condensation")
{
    const ProblemSpec p = nonlinear_problem();
    std::mt19937_64 rng(6);

    SUBCASE("matches the uncondensed solve; size (k+1) x interior faces")
    {
        const HhoSpace space = test::make_space(generate_cartesian(4), 1);
        const KirchhoffSystem sys(space, p);
        const JacobianBlocks j = sys.jacobian(random_vector(rng, sys.n_free(), 0.3), 0.2);
        const CondensedSystem cs(space, j.local);
        REQUIRE(cs.ok());
        CHECK(cs.size() == static_cast<Eigen::Index>(2 * space.mesh().interior_faces().size()));
        StaticCondensationSolver sc(space);
        sc.compute(j);
        CHECK(sc.condensed());
        SparseDirectSolver direct;
        direct.compute(j);
        const Vector rhs = random_vector(rng, sys.n_free());
        CHECK((sc.solve(rhs) - direct.solve(rhs)).cwiseAbs().maxCoeff() <= 1e-10);
    }
    SUBCASE("single cell: empty face system")
    {
        const HhoSpace space = test::make_space(test::unit_square(), 2);
        const KirchhoffSystem sys(space, p);
        const JacobianBlocks j = sys.jacobian(Vector::Zero(sys.n_free()), 0.0);
        const CondensedSystem cs(space, j.local);
        CHECK(cs.size() == 0);
        StaticCondensationSolver sc(space);
        sc.compute(j);
        const Vector rhs = random_vector(rng, sys.n_free());
        CHECK((Matrix(j.A) * sc.solve(rhs) - rhs).norm() <= 1e-12 * rhs.norm());
    }
    SUBCASE("near-singular cell block falls back with a warning")
    {
        const HhoSpace space = test::make_space(generate_cartesian(2), 0);
        const KirchhoffSystem sys(space, paper_example_problem());
        JacobianBlocks j = sys.jacobian(Vector::Zero(sys.n_free()), 0.0);
        j.local[1](0, 0) = 0.0; // k = 0: the cell block is 1x1
        StaticCondensationSolver sc(space);
        sc.compute(j);
        CHECK_FALSE(sc.condensed());
        REQUIRE(sc.warnings().size() >= 1);
        CHECK(sc.warnings()[0].find("cell 1") != std::string::npos);
    }
}

TEST_CASE("solver paths agree on every Newton step")
{
    const ProblemSpec p = nonlinear_problem();
    for (auto fam : test::all_families())
        for (int k = 0; k <= 2; ++k) {
            const HhoSpace space = test::make_space(generate(fam, fam == MeshFamily::hexagonal ? 3 : 4), k);
            const KirchhoffSystem sys(space, p);
            Vector alpha = poisson_initial_guess(sys);
            double d = sys.nonlocal(alpha);
            for (int it = 0; it < 4; ++it) {
                const Vector F = sys.residual(alpha, d);
                const JacobianBlocks j = sys.jacobian(alpha, d);
                const Vector a = solve_newton_system(space, j, -F, SolverPath::dense);
                const Vector b = solve_newton_system(space, j, -F, SolverPath::smw_sparse);
                const Vector c = solve_newton_system(space, j, -F, SolverPath::smw_condensed);
                CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-10);
                CHECK((a - c).cwiseAbs().maxCoeff() <= 1e-10);
                alpha += a.head(sys.n_free());
                d += a[sys.n_free()];
            }
        }
}

TEST_CASE("Newton")
{
    SUBCASE("linear problem converges in one iteration")
    {
        const HhoSpace space = test::make_space(generate_triangular(4), 1);
        const NewtonResult r = newton_solve(space, poisson_problem());
        CHECK(r.report.converged);
        CHECK(r.report.iterations == 1);
    }
    SUBCASE("manufactured Kirchhoff problem: at most 6 iterations, superlinear decrease")
    {
        for (int k = 0; k <= 2; ++k) {
            const HhoSpace space = test::make_space(generate_triangular(8), k);
            const NewtonResult r = newton_solve(space, paper_example_problem());
            CHECK(r.report.converged);
            CHECK(r.report.iterations <= 6);
            const auto& s = r.report.step_norms;
            CHECK(superlinear_decrease(s, 1e-12));
            CHECK(s.back() <= 1e-12);
            CHECK(r.report.residual_norms.back() <= 1e-11);
            CHECK(r.report.final_d == r.d);
        }
    }
    SUBCASE("non-convergence is reported")
    {
        const HhoSpace space = test::make_space(generate_cartesian(4), 1);
        NewtonOptions o;
        o.max_iter = 1;
        const NewtonResult r = newton_solve(space, paper_example_problem(), o);
        CHECK_FALSE(r.report.converged);
        CHECK(r.report.iterations == 1);
    }
    SUBCASE("invalid options")
    {
        const HhoSpace space = test::make_space(generate_cartesian(2), 1);
        NewtonOptions o;
        o.tol = 0.0;
        CHECK_THROWS_AS(newton_solve(space, poisson_problem(), o), std::invalid_argument);
        o.tol = 1e-12;
        o.max_iter = 0;
        CHECK_THROWS_AS(newton_solve(space, poisson_problem(), o), std::invalid_argument);
    }
    SUBCASE("semilinear problem")
    {
        const HhoSpace space = test::make_space(generate_hexagonal(4), 1);
        const NewtonResult r = newton_solve(space, semilinear_problem());
        CHECK(r.report.converged);
        CHECK(r.report.iterations <= 6);
    }
}

TEST_CASE("superlinear decrease")
{
    CHECK(superlinear_decrease({1e-2, 1e-5, 1e-11, 1e-15}, 1e-12));
    CHECK_FALSE(superlinear_decrease({1e-2, 1e-3, 1e-4, 1e-5}, 1e-12));
    CHECK_FALSE(superlinear_decrease({1e-2, 1e-13}, 1e-12));
}

TEST_CASE("smallest eigenvalue")
{
    const double exact = 2.0 * std::numbers::pi * std::numbers::pi;
    const HhoSpace s16 = test::make_space(generate_cartesian(16), 1);
    const EigenvalueResult e16 = smallest_eigenvalue(s16);
    CHECK(e16.converged);
    CHECK(std::abs(e16.lambda - exact) <= 0.01 * exact);

    double prev = 1e300;
    for (std::size_t n : {4u, 8u, 16u}) {
        const EigenvalueResult e = smallest_eigenvalue(test::make_space(generate_cartesian(n), 1));
        const double err = std::abs(e.lambda - exact);
        CHECK(err < prev);
        prev = err;
    }

    // Rayleigh bound with w = sin(pi x) sin(pi y).
    const ScalarField w = [](const Point& p) { return std::sin(M_PI * p.x()) * std::sin(M_PI * p.y()); };
    const HybridField iw = interpolate(s16, w, BoundaryMode::zero);
    const double a = energy_norm(s16, iw);
    const double m = cell_l2_norm(s16, iw);
    CHECK(e16.lambda <= a * a / (m * m) * (1 + 1e-12));

    const EigenvalueResult capped = smallest_eigenvalue(s16, 1e-15, 2);
    CHECK_FALSE(capped.converged);
    CHECK(capped.iterations == 2);
    CHECK(capped.residual > 0.0);
}

TEST_CASE("discrete bound")
{
    CHECK(discrete_solution_bound(4.0, 1.0, 0.0, 2.0) == Approx(1.0));
    CHECK(discrete_solution_bound(4.0, 1.0, 2.0, 2.0) == Approx(2.0));
    CHECK_THROWS_AS(discrete_solution_bound(1.0, 1.0, 2.0, 1.0), std::invalid_argument);
}
