#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "hho/linear_solvers.hpp"
#include "hho/mesh.hpp"

namespace hho {

enum class Command { solve, study, eig, mesh_info };

std::string_view command_name(Command command) noexcept;

struct RunConfig {
    Command command = Command::solve;
    std::string problem = "paper-example";
    MeshFamily family = MeshFamily::cartesian;
    std::size_t n = 8;
    int levels = 3;
    int k = 1;
    double tol = 1e-12;
    int max_iter = 20;
    double distortion = default_kershaw_distortion;
    std::string out;
    std::string mesh_file;
    bool timing = true;
    bool orthonormal_basis = false;
    SolverPath solver = SolverPath::smw_condensed;
};

/// Validated configuration. Throws UsageError (exit code 2) on unknown flags or
/// out-of-range values; `--help` throws UsageError carrying the help text and exit code 0.
RunConfig parse_args(const std::vector<std::string>& args);
RunConfig parse_args(int argc, const char* const* argv);

/// Executes a configuration. Returns 0 iff the run converged at every level.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run, mapping errors to exit codes (2 usage, 1 failure).
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace hho
