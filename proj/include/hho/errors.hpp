#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hho {

/// Invalid mesh geometry or topology (orientation, manifoldness, degenerate entities).
class MeshError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed mesh or report file. `line()` is 1-based, 0 when the file is empty.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Failures inside the discrete solvers (singular systems, non-finite data).
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad command line. Carries the process exit code the CLI should return.
class UsageError : public std::runtime_error {
public:
    UsageError(const std::string& what, int exit_code = 2)
        : std::runtime_error(what), exit_code_(exit_code) {}
    int exit_code() const noexcept { return exit_code_; }

private:
    int exit_code_;
};

} // namespace hho
