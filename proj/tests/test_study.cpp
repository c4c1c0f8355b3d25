#include <filesystem>
#include <sstream>

#include <doctest.h>

#include "hho/errors.hpp"
#include "hho/newton.hpp"
#include "hho/study.hpp"
#include "test_support.hpp"

using namespace hho;
using doctest::Approx;

namespace {

ConvergenceReport sample_report()
{
    ConvergenceReport r;
    r.problem = "paper-example";
    r.family = MeshFamily::hexagonal;
    r.k = 2;
    r.metadata["M"] = "1 + d";
    r.metadata["newton_tol"] = "1e-12";
    ConvergenceRow a;
    a.level = 1;
    a.h = 0.1234567890123456789;
    a.ndof = 321;
    a.error = 1.0 / 3.0;
    a.newton_iters = 4;
    a.seconds = 0.25;
    a.converged = true;
    ConvergenceRow b = a;
    b.level = 2;
    b.h = a.h / 2;
    b.ndof = 1234;
    b.error = 1e-17 * M_PI;
    b.rate = convergence_rate(a.error, b.error, a.h, b.h);
    r.rows = {a, b};
    return r;
}

} // namespace

TEST_CASE("convergence rate")
{
    CHECK(convergence_rate(1.0, 0.5, 0.2, 0.1) == Approx(1.0).epsilon(1e-14));
    CHECK(convergence_rate(1.0212e-01, 5.0460e-02, 0.0318, 0.0159) == Approx(1.017).epsilon(5e-4));
    CHECK(convergence_rate(1.1834e-02, 2.9675e-03, 0.0318, 0.0159) == Approx(1.996).epsilon(5e-4));
    CHECK_THROWS_AS(convergence_rate(0.0, 0.5, 0.2, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(convergence_rate(1.0, -0.5, 0.2, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(convergence_rate(1.0, 0.5, 0.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(convergence_rate(1.0, 0.5, 0.1, 0.2), std::invalid_argument);
}

TEST_CASE("relative error")
{
    const HhoSpace space = test::make_space(generate_hexagonal(3), 1);
    const ProblemSpec p = paper_example_problem();
    const HybridField iu = interpolate(space, p.exact, BoundaryMode::zero);
    CHECK(relative_error(space, p, iu) == 0.0);

    const NewtonResult r = newton_solve(space, p);
    const double e = relative_error(space, p, r.u);
    CHECK(e > 0.0);
    CHECK(relative_error(space, p, r.u + HybridField(space)) == e);

    ProblemSpec zero = p;
    zero.exact = [](const Point&) { return 0.0; };
    CHECK_THROWS_AS(relative_error(space, zero, r.u), std::invalid_argument);
    ProblemSpec none = p;
    none.exact = nullptr;
    CHECK_THROWS_AS(relative_error(space, none, r.u), std::invalid_argument);
}

TEST_CASE("report serialization round-trips")
{
    const ConvergenceReport r = sample_report();
    std::stringstream csv;
    write_csv(csv, r);
    const std::string text = csv.str();
    CHECK(text.rfind("level,h,ndof,error,rate,newton_iters,seconds\n", 0) == 0);
    CHECK(text.find("\n1,") != std::string::npos);
    const auto rows = read_csv(csv);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].h == r.rows[0].h);
    CHECK(rows[0].error == r.rows[0].error);
    CHECK_FALSE(rows[0].rate.has_value());
    CHECK(rows[1].rate == r.rows[1].rate);
    CHECK(rows[1].ndof == 1234);

    const auto dir = std::filesystem::temp_directory_path() / "hho_study_roundtrip";
    std::filesystem::create_directories(dir);
    const std::string stem = (dir / "report").string();
    write_report_files(stem, r);
    const ConvergenceReport back = read_report_files(stem);
    CHECK(back.problem == r.problem);
    CHECK(back.family == r.family);
    CHECK(back.k == r.k);
    CHECK(back.complete == r.complete);
    CHECK(back.metadata == r.metadata);
    CHECK(back.rows == r.rows);
    CHECK(std::filesystem::exists(stem + ".dat"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("report parse errors carry line numbers")
{
    auto line_of = [](const std::string& text) {
        std::istringstream is(text);
        try {
            read_csv(is);
        } catch (const ParseError& e) {
            return e.line();
        }
        return std::size_t{999};
    };
    CHECK(line_of("") == 0);
    CHECK(line_of("level,h\n") == 1);
    CHECK(line_of("level,h,ndof,error,rate,newton_iters,seconds\n1,0.5,10,0.1,,4,0\n2,abc,10,0.1,1,4,0\n") == 3);
    CHECK(line_of("level,h,ndof,error,rate,newton_iters,seconds\n1,0.5,10\n") == 2);

    ConvergenceReport r;
    std::istringstream bad("problem=x\nfamily=pentagonal\n");
    CHECK_THROWS_AS(read_metadata(bad, r), ParseError);
    std::istringstream noeq("problem\n");
    CHECK_THROWS_AS(read_metadata(noeq, r), ParseError);
}

TEST_CASE("gnuplot file")
{
    std::ostringstream os;
    write_gnuplot(os, sample_report());
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line[0] == '#');
    int rows = 0;
    while (std::getline(is, line)) {
        double h = 0, e = 0;
        std::istringstream ls(line);
        CHECK(static_cast<bool>(ls >> h >> e));
        ++rows;
    }
    CHECK(rows == 2);
}

TEST_CASE("study rates")
{
    StudyOptions o;
    o.timing = false;
    SUBCASE("k = 0 Cartesian")
    {
        o.k = 0;
        const auto r = run_convergence(paper_example_problem(), MeshFamily::cartesian, o);
        REQUIRE(r.complete);
        REQUIRE(r.rows.size() == 3);
        for (std::size_t i = 1; i < r.rows.size(); ++i) {
            CHECK(std::abs(*r.rows[i].rate - 1.0) <= 0.1);
            CHECK(r.rows[i].error < r.rows[i - 1].error);
            CHECK(r.rows[i].h < r.rows[i - 1].h);
        }
        CHECK_FALSE(r.rows[0].rate.has_value());
        CHECK(r.metadata.at("M") == "1 + d");
    }
    SUBCASE("Poisson baseline")
    {
        for (int k = 0; k <= 1; ++k) {
            o.k = k;
            const auto r = run_convergence(poisson_problem(), MeshFamily::triangular, o);
            REQUIRE(r.all_converged());
            CHECK(std::abs(*r.rows.back().rate - (k + 1)) <= 0.15);
            for (const auto& row : r.rows)
                CHECK(row.newton_iters == 1);
        }
    }
}

TEST_CASE("failed level gives a partial report")
{
    StudyOptions o;
    o.timing = false;
    o.max_iter = 1;
    const auto r = run_convergence(paper_example_problem(), MeshFamily::cartesian, o);
    CHECK_FALSE(r.complete);
    CHECK(r.rows.size() == 1);
    CHECK_FALSE(r.all_converged());
    CHECK(r.failure.find("level 1") != std::string::npos);

    ProblemSpec p = paper_example_problem();
    p.load = [](const Point& x, double u) { return u > 1e-3 && u < 0.2 && x.x() < 0.1 ? std::nan("") : 1.0; };
    const auto s = run_convergence(p, MeshFamily::cartesian, StudyOptions{});
    CHECK_FALSE(s.complete);
    CHECK(s.rows.empty());
    CHECK(s.failure.find("cell") != std::string::npos);

    o.levels = 1;
    CHECK_THROWS_AS(run_convergence(paper_example_problem(), MeshFamily::cartesian, o), std::invalid_argument);
}

TEST_CASE("studies are bitwise reproducible without timing")
{
    StudyOptions o;
    o.timing = false;
    o.levels = 2;
    o.k = 2;
    std::ostringstream a, b;
    write_csv(a, run_convergence(paper_example_problem(), MeshFamily::kershaw, o));
    write_csv(b, run_convergence(paper_example_problem(), MeshFamily::kershaw, o));
    CHECK(a.str() == b.str());
}
