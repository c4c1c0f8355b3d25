#include "hho/study.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "hho/kernels.hpp"
#include "hho/newton.hpp"
#include "hho/norms.hpp"

namespace hho {

namespace {

std::string format_real(double v)
{
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace

double relative_error(const HhoSpace& space, const ProblemSpec& problem, const HybridField& uh)
{
    if (!problem.has_exact())
        throw std::invalid_argument("problem '" + problem.name + "' has no exact solution");
    const HybridField iu = interpolate(space, problem.exact);
    const double denom = energy_norm(space, iu);
    if (!(denom > 0.0))
        throw std::invalid_argument("relative error undefined: ||I_h u||_{a,h} = 0");
    return energy_norm(space, iu - uh) / denom;
}

double convergence_rate(double e_prev, double e_cur, double h_prev, double h_cur)
{
    if (!(e_prev > 0.0) || !(e_cur > 0.0) || !(h_prev > 0.0) || !(h_cur > 0.0))
        throw std::invalid_argument("rate needs positive errors and mesh sizes");
    if (!(h_cur < h_prev))
        throw std::invalid_argument("rate needs h_cur < h_prev");
    return std::log(e_cur / e_prev) / std::log(h_cur / h_prev);
}

bool ConvergenceReport::all_converged() const
{
    if (!complete || rows.empty())
        return false;
    for (const auto& r : rows)
        if (!r.converged)
            return false;
    return true;
}

ConvergenceReport run_convergence(const ProblemSpec& problem, MeshFamily family, const StudyOptions& options)
{
    if (options.levels < 2)
        throw std::invalid_argument("a convergence study needs at least 2 levels");
    if (options.first_level < 1)
        throw std::invalid_argument("levels are numbered from 1");
    if (options.k < 0)
        throw std::invalid_argument("degree k must be non-negative");
    if (!problem.has_exact())
        throw std::invalid_argument("problem '" + problem.name + "' has no exact solution");

    DiscretizationOptions disc;
    disc.k = options.k;
    disc.orthonormal_cell_basis = options.orthonormal_cell_basis;

    ConvergenceReport report;
    report.problem = problem.name;
    report.family = family;
    report.k = options.k;
    report.metadata["M"] = problem.coefficient_formula;
    report.metadata["problem_description"] = problem.description;
    report.metadata["cell_quadrature_degree"] = std::to_string(disc.cell_degree());
    report.metadata["face_quadrature_degree"] = std::to_string(disc.face_degree());
    report.metadata["newton_tol"] = format_real(options.tol);
    report.metadata["newton_max_iter"] = std::to_string(options.max_iter);
    report.metadata["solver_path"] = std::string(solver_path_name(options.path));
    report.metadata["cell_basis"] = options.orthonormal_cell_basis ? "orthonormal" : "scaled-monomial";
    report.metadata["kernels"] = std::string(kernels::isa_name(kernels::active_isa()));
    report.metadata["h"] = "max cell diameter";
    report.metadata["ndof"] = "free unknowns (cell and interior-face)";
    if (family == MeshFamily::kershaw)
        report.metadata["distortion"] = format_real(options.distortion);

    NewtonOptions newton;
    newton.tol = options.tol;
    newton.max_iter = options.max_iter;
    newton.path = options.path;

    for (int i = 0; i < options.levels; ++i) {
        const int level = options.first_level + i;
        const auto start = std::chrono::steady_clock::now();
        ConvergenceRow row;
        row.level = level;
        try {
            const std::size_t n = family_level_n(family, level);
            auto mesh = std::make_shared<const PolyMesh>(generate(family, n, options.distortion));
            const HhoSpace space(mesh, disc);
            const NewtonResult sol = newton_solve(space, problem, newton);
            row.h = mesh->h();
            row.ndof = space.dofs().n_free();
            row.newton_iters = sol.report.iterations;
            row.converged = sol.report.converged;
            row.error = relative_error(space, problem, sol.u);
            for (const auto& w : sol.report.warnings)
                report.metadata["warning_level_" + std::to_string(level)] = w;
        } catch (const std::exception& e) {
            report.complete = false;
            report.failure = "level " + std::to_string(level) + ": " + e.what();
            break;
        }
        if (options.timing)
            row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!report.rows.empty()) {
            const auto& prev = report.rows.back();
            if (row.error > 0.0 && prev.error > 0.0 && row.h < prev.h)
                row.rate = convergence_rate(prev.error, row.error, prev.h, row.h);
        }
        report.rows.push_back(row);
        if (!row.converged) {
            report.complete = false;
            report.failure = "level " + std::to_string(level) + ": Newton did not converge in "
                             + std::to_string(options.max_iter) + " iterations";
            break;
        }
    }
    return report;
}

} // namespace hho
