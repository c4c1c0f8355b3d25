#include <cmath>
#include <fstream>
#include <ostream>
#include <memory>
#include <numbers>

#include <json.hpp>

#include "hho/cli.hpp"
#include "hho/eigenvalue.hpp"
#include "hho/errors.hpp"
#include "hho/kernels.hpp"
#include "hho/mesh_io.hpp"
#include "hho/newton.hpp"
#include "hho/norms.hpp"
#include "hho/problem.hpp"
#include "hho/study.hpp"

namespace hho {

namespace {

using nlohmann::json;

std::shared_ptr<const PolyMesh> make_mesh(const RunConfig& cfg)
{
    if (!cfg.mesh_file.empty())
        return std::make_shared<const PolyMesh>(read_mesh(cfg.mesh_file));
    return std::make_shared<const PolyMesh>(generate(cfg.family, cfg.n, cfg.distortion));
}

DiscretizationOptions discretization(const RunConfig& cfg)
{
    DiscretizationOptions d;
    d.k = cfg.k;
    d.orthonormal_cell_basis = cfg.orthonormal_basis;
    return d;
}

json mesh_json(const RunConfig& cfg, const PolyMesh& mesh)
{
    json j;
    if (cfg.mesh_file.empty()) {
        j["family"] = std::string(family_name(cfg.family));
        j["n"] = cfg.n;
        if (cfg.family == MeshFamily::kershaw)
            j["distortion"] = cfg.distortion;
    } else {
        j["file"] = cfg.mesh_file;
    }
    j["vertices"] = mesh.n_vertices();
    j["cells"] = mesh.n_cells();
    j["faces"] = mesh.n_faces();
    j["boundary_faces"] = mesh.boundary_faces().size();
    j["h"] = mesh.h();
    return j;
}

void emit(const RunConfig& cfg, const json& j, std::ostream& out)
{
    out << j.dump(2) << '\n';
    if (!cfg.out.empty()) {
        std::ofstream os(cfg.out);
        if (!os)
            throw std::runtime_error("cannot write '" + cfg.out + "'");
        os << j.dump(2) << '\n';
    }
}

int run_solve(const RunConfig& cfg, std::ostream& out)
{
    const ProblemSpec& problem = builtin_problems().get(cfg.problem);
    const auto mesh = make_mesh(cfg);
    const HhoSpace space(mesh, discretization(cfg));
    NewtonOptions opts;
    opts.tol = cfg.tol;
    opts.max_iter = cfg.max_iter;
    opts.path = cfg.solver;
    const NewtonResult sol = newton_solve(space, problem, opts);

    json j;
    j["command"] = "solve";
    j["problem"] = problem.name;
    j["M"] = problem.coefficient_formula;
    j["k"] = cfg.k;
    j["mesh"] = mesh_json(cfg, *mesh);
    j["ndof"] = space.dofs().n_free();
    j["newton"] = {{"converged", sol.report.converged},
                   {"iterations", sol.report.iterations},
                   {"step_norms", sol.report.step_norms},
                   {"residual_norms", sol.report.residual_norms},
                   {"initial_d", sol.report.initial_d},
                   {"final_d", sol.report.final_d},
                   {"seconds", cfg.timing ? sol.report.seconds : 0.0},
                   {"warnings", sol.report.warnings},
                   {"solver_path", std::string(solver_path_name(cfg.solver))}};
    j["d"] = sol.d;
    j["energy_norm"] = energy_norm(space, sol.u);
    if (problem.has_exact())
        j["relative_error"] = relative_error(space, problem, sol.u);
    emit(cfg, j, out);
    return sol.report.converged ? 0 : 1;
}

int run_study(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const ProblemSpec& problem = builtin_problems().get(cfg.problem);
    StudyOptions opts;
    opts.levels = cfg.levels;
    opts.k = cfg.k;
    opts.tol = cfg.tol;
    opts.max_iter = cfg.max_iter;
    opts.distortion = cfg.distortion;
    opts.path = cfg.solver;
    opts.timing = cfg.timing;
    opts.orthonormal_cell_basis = cfg.orthonormal_basis;
    const ConvergenceReport report = run_convergence(problem, cfg.family, opts);

    write_csv(out, report);
    if (!cfg.out.empty()) {
        std::string stem = cfg.out;
        if (stem.size() > 4 && stem.compare(stem.size() - 4, 4, ".csv") == 0)
            stem.resize(stem.size() - 4);
        write_report_files(stem, report);
    }
    if (!report.complete)
        err << "study incomplete: " << report.failure << '\n';
    return report.all_converged() ? 0 : 1;
}

int run_eig(const RunConfig& cfg, std::ostream& out)
{
    const auto mesh = make_mesh(cfg);
    const HhoSpace space(mesh, discretization(cfg));
    const EigenvalueResult eig = smallest_eigenvalue(space);
    const double exact = 2.0 * std::numbers::pi * std::numbers::pi;

    json j;
    j["command"] = "eig";
    j["k"] = cfg.k;
    j["mesh"] = mesh_json(cfg, *mesh);
    j["lambda"] = eig.lambda;
    j["iterations"] = eig.iterations;
    j["residual"] = eig.residual;
    j["converged"] = eig.converged;
    j["reference_2pi2"] = exact;
    j["relative_difference"] = std::abs(eig.lambda - exact) / exact;

    const ProblemSpec& problem = builtin_problems().get(cfg.problem);
    const double load_norm = l2_norm(space, problem.load_at_zero());
    j["problem"] = problem.name;
    j["load_norm"] = load_norm;
    try {
        j["R1h"] = discrete_solution_bound(eig.lambda, problem.m0, problem.lipschitz_a, load_norm);
    } catch (const std::invalid_argument&) {
        j["R1h"] = nullptr;
    }
    emit(cfg, j, out);
    return eig.converged ? 0 : 1;
}

int run_mesh_info(const RunConfig& cfg, std::ostream& out)
{
    const auto mesh = make_mesh(cfg);
    const MeshQuality q = measure_quality(*mesh);
    json j;
    j["command"] = "mesh-info";
    j["mesh"] = mesh_json(cfg, *mesh);
    j["quality"] = {{"min_face_to_cell_ratio", q.min_face_to_cell_ratio},
                    {"max_face_to_cell_ratio", q.max_face_to_cell_ratio},
                    {"max_faces_per_cell", q.max_faces_per_cell},
                    {"total_area", q.total_area},
                    {"max_closure_defect", q.max_closure_defect},
                    {"min_cell_diameter", q.min_cell_diameter},
                    {"max_cell_diameter", q.max_cell_diameter},
                    {"min_cell_area", q.min_cell_area}};
    j["kernels"] = std::string(kernels::isa_name(kernels::active_isa()));
    emit(cfg, j, out);
    return 0;
}

} // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    switch (config.command) {
    case Command::solve: return run_solve(config, out);
    case Command::study: return run_study(config, out, err);
    case Command::eig: return run_eig(config, out);
    case Command::mesh_info: return run_mesh_info(config, out);
    }
    return 2;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    try {
        cfg = parse_args(argc, argv);
    } catch (const UsageError& e) {
        (e.exit_code() == 0 ? out : err) << e.what() << '\n';
        return e.exit_code();
    }
    try {
        return run(cfg, out, err);
    } catch (const ParseError& e) {
        err << "error reading mesh: " << e.what() << '\n';
    } catch (const MeshError& e) {
        err << "invalid mesh: " << e.what() << '\n';
    } catch (const SolverError& e) {
        err << "solver failure: " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return 1;
}

} // namespace hho
