#include <map>

#include <CLI11.hpp>

#include "hho/cli.hpp"
#include "hho/errors.hpp"
#include "hho/problem.hpp"

namespace hho {

std::string_view command_name(Command command) noexcept
{
    switch (command) {
    case Command::solve: return "solve";
    case Command::study: return "study";
    case Command::eig: return "eig";
    case Command::mesh_info: return "mesh-info";
    }
    return "?";
}

RunConfig parse_args(const std::vector<std::string>& args)
{
    RunConfig cfg;
    std::string command = "solve";
    std::string family = "cartesian";
    std::string timing = "on";
    std::string solver = "smw-condensed";

    CLI::App app{"HHO solver for nonlocal Kirchhoff-type problems on polygonal meshes", "hho_kirchhoff"};
    app.add_option("command", command, "solve | study | eig | mesh-info")
        ->check(CLI::IsMember({"solve", "study", "eig", "mesh-info"}))
        ->capture_default_str();
    app.add_option("--problem", cfg.problem, "built-in problem")
        ->check(CLI::IsMember(builtin_problems().names()))
        ->capture_default_str();
    app.add_option("--family", family, "mesh family")
        ->check(CLI::IsMember({"triangular", "cartesian", "hexagonal", "kershaw"}))
        ->capture_default_str();
    auto* n_opt = app.add_option("--n", cfg.n, "mesh resolution for solve/eig/mesh-info")
                      ->check(CLI::Range(std::size_t{1}, std::size_t{4096}))
                      ->capture_default_str();
    app.add_option("--levels", cfg.levels, "refinement levels for study")
        ->check(CLI::Range(2, 8))
        ->capture_default_str();
    app.add_option("--k", cfg.k, "polynomial degree")->check(CLI::Range(0, 3))->capture_default_str();
    app.add_option("--tol", cfg.tol, "Newton step tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--max-iter", cfg.max_iter, "Newton iteration cap")
        ->check(CLI::Range(1, 1000))
        ->capture_default_str();
    app.add_option("--distortion", cfg.distortion, "Kershaw distortion in [0, 1)")
        ->check(CLI::Range(0.0, 0.999999))
        ->capture_default_str();
    app.add_option("--out", cfg.out, "output path (study: file stem for .csv/.meta/.dat)");
    auto* mesh_opt = app.add_option("--mesh-file", cfg.mesh_file, "read the mesh from a polymesh file")
                         ->check(CLI::ExistingFile);
    app.add_option("--timing", timing, "record wall time in study reports")
        ->check(CLI::IsMember({"on", "off"}))
        ->capture_default_str();
    app.add_flag("--orthonormal-basis", cfg.orthonormal_basis, "orthonormalize the cell bases");
    app.add_option("--solver", solver, "Newton linear solve path")
        ->check(CLI::IsMember({"dense", "smw-sparse", "smw-condensed"}))
        ->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw UsageError(app.help(), 0);
    } catch (const CLI::ParseError& e) {
        throw UsageError(std::string(e.what()) + "\nRun with --help for usage.", 2);
    }

    static const std::map<std::string, Command> commands{
        {"solve", Command::solve}, {"study", Command::study}, {"eig", Command::eig}, {"mesh-info", Command::mesh_info}};
    cfg.command = commands.at(command);
    cfg.family = parse_family(family);
    cfg.timing = timing == "on";
    cfg.solver = parse_solver_path(solver);

    if (cfg.command == Command::study && !mesh_opt->empty())
        throw UsageError("--mesh-file cannot be used with study (levels are generated)", 2);
    if (cfg.command == Command::study && !n_opt->empty())
        throw UsageError("--n cannot be used with study; use --levels", 2);
    if (cfg.family == MeshFamily::kershaw && cfg.n < 2 && mesh_opt->empty())
        throw UsageError("kershaw meshes need --n >= 2", 2);
    return cfg;
}

RunConfig parse_args(int argc, const char* const* argv)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i)
        args.emplace_back(argv[i]);
    return parse_args(args);
}

} // namespace hho
