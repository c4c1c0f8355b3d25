#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hho/hybrid_field.hpp"
#include "hho/linear_solvers.hpp"
#include "hho/mesh.hpp"
#include "hho/problem.hpp"
#include "hho/space.hpp"

namespace hho {

/// e_h = ||I_h u - u_h||_{a,h} / ||I_h u||_{a,h}. Throws std::invalid_argument
/// when the problem has no exact solution or ||I_h u||_{a,h} = 0.
double relative_error(const HhoSpace& space, const ProblemSpec& problem, const HybridField& uh);

/// log(e_cur / e_prev) / log(h_cur / h_prev). Throws std::invalid_argument on
/// non-positive inputs or h_cur >= h_prev.
double convergence_rate(double e_prev, double e_cur, double h_prev, double h_cur);

struct ConvergenceRow {
    int level = 0;
    double h = 0.0;
    std::size_t ndof = 0; // free unknowns (cell plus interior-face)
    double error = 0.0;
    std::optional<double> rate;
    int newton_iters = 0;
    double seconds = 0.0;
    bool converged = false;

    bool operator==(const ConvergenceRow&) const = default;
};

struct ConvergenceReport {
    std::string problem;
    MeshFamily family = MeshFamily::cartesian;
    int k = 1;
    std::vector<ConvergenceRow> rows;
    std::map<std::string, std::string> metadata;
    /// False when some level failed; the rows before it are kept.
    bool complete = true;
    std::string failure;

    bool all_converged() const;
};

struct StudyOptions {
    int levels = 3;
    int first_level = 1;
    int k = 1;
    double tol = 1e-12;
    int max_iter = 20;
    double distortion = default_kershaw_distortion;
    SolverPath path = SolverPath::smw_condensed;
    /// Record wall time per level; off writes 0 so reports are reproducible byte for byte.
    bool timing = true;
    bool orthonormal_cell_basis = false;
};

/// Generates family_level_n(family, level) meshes for each level, solves with
/// Newton and fills errors and rates. A failing level stops the study.
ConvergenceReport run_convergence(const ProblemSpec& problem, MeshFamily family, const StudyOptions& options);

// Serialization ---------------------------------------------------------

/// `level,h,ndof,error,rate,newton_iters,seconds`, reals with 17 significant
/// digits, empty rate on the first level.
void write_csv(std::ostream& os, const ConvergenceReport& report);
/// Rows only; metadata comes from the sidecar. Throws ParseError.
std::vector<ConvergenceRow> read_csv(std::istream& is);

/// `key=value` lines: problem, family, k, complete, failure and the metadata map.
void write_metadata(std::ostream& os, const ConvergenceReport& report);
/// Fills problem, family, k, complete, failure and metadata. Throws ParseError.
void read_metadata(std::istream& is, ConvergenceReport& report);

/// Two columns `h e_h`, with a leading comment line.
void write_gnuplot(std::ostream& os, const ConvergenceReport& report);

/// Writes `<stem>.csv`, `<stem>.meta` and `<stem>.dat`.
void write_report_files(const std::string& stem, const ConvergenceReport& report);
ConvergenceReport read_report_files(const std::string& stem);

} // namespace hho
