#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "hho/errors.hpp"
#include "hho/study.hpp"

namespace hho {

namespace {

constexpr const char* csv_header = "level,h,ndof,error,rate,newton_iters,seconds";
constexpr const char* meta_prefix = "meta.";

std::string real17(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string one_line(std::string s)
{
    for (auto& ch : s)
        if (ch == '\n' || ch == '\r')
            ch = ' ';
    return s;
}

std::vector<std::string> split(const std::string& line, char sep)
{
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, sep))
        out.push_back(field);
    if (!line.empty() && line.back() == sep)
        out.emplace_back();
    return out;
}

double parse_real(const std::string& s, std::size_t line)
{
    if (s.empty())
        throw ParseError(line, "empty number");
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE)
        throw ParseError(line, "not a number: '" + s + "'");
    return v;
}

long parse_int(const std::string& s, std::size_t line)
{
    if (s.empty())
        throw ParseError(line, "empty integer");
    char* end = nullptr;
    errno = 0;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (end != s.c_str() + s.size() || errno == ERANGE)
        throw ParseError(line, "not an integer: '" + s + "'");
    return v;
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("cannot write '" + path + "'");
    return os;
}

std::ifstream open_in(const std::string& path)
{
    std::ifstream is(path);
    if (!is)
        throw std::runtime_error("cannot read '" + path + "'");
    return is;
}

} // namespace

void write_csv(std::ostream& os, const ConvergenceReport& report)
{
    os << csv_header << '\n';
    for (const auto& r : report.rows) {
        os << r.level << ',' << real17(r.h) << ',' << r.ndof << ',' << real17(r.error) << ','
           << (r.rate ? real17(*r.rate) : std::string()) << ',' << r.newton_iters << ',' << real17(r.seconds)
           << '\n';
    }
}

std::vector<ConvergenceRow> read_csv(std::istream& is)
{
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(is, line))
        throw ParseError(0, "empty report");
    ++lineno;
    if (line != csv_header)
        throw ParseError(lineno, "unexpected header '" + line + "'");
    std::vector<ConvergenceRow> rows;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty())
            continue;
        const auto f = split(line, ',');
        if (f.size() != 7)
            throw ParseError(lineno, "expected 7 fields, found " + std::to_string(f.size()));
        ConvergenceRow r;
        r.level = static_cast<int>(parse_int(f[0], lineno));
        r.h = parse_real(f[1], lineno);
        const long ndof = parse_int(f[2], lineno);
        if (ndof < 0)
            throw ParseError(lineno, "negative ndof");
        r.ndof = static_cast<std::size_t>(ndof);
        r.error = parse_real(f[3], lineno);
        if (!f[4].empty())
            r.rate = parse_real(f[4], lineno);
        r.newton_iters = static_cast<int>(parse_int(f[5], lineno));
        r.seconds = parse_real(f[6], lineno);
        rows.push_back(r);
    }
    return rows;
}

void write_metadata(std::ostream& os, const ConvergenceReport& report)
{
    os << "problem=" << report.problem << '\n';
    os << "family=" << family_name(report.family) << '\n';
    os << "k=" << report.k << '\n';
    os << "complete=" << (report.complete ? "true" : "false") << '\n';
    os << "failure=" << one_line(report.failure) << '\n';
    std::string converged;
    for (const auto& r : report.rows)
        converged += r.converged ? '1' : '0';
    os << "converged=" << converged << '\n';
    for (const auto& [key, value] : report.metadata)
        os << meta_prefix << one_line(key) << '=' << one_line(value) << '\n';
}

void read_metadata(std::istream& is, ConvergenceReport& report)
{
    std::string line;
    std::size_t lineno = 0;
    std::string converged;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#')
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(lineno, "expected key=value");
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        if (key == "problem") {
            report.problem = value;
        } else if (key == "family") {
            try {
                report.family = parse_family(value);
            } catch (const std::invalid_argument& e) {
                throw ParseError(lineno, e.what());
            }
        } else if (key == "k") {
            report.k = static_cast<int>(parse_int(value, lineno));
        } else if (key == "complete") {
            if (value != "true" && value != "false")
                throw ParseError(lineno, "complete must be true or false");
            report.complete = value == "true";
        } else if (key == "failure") {
            report.failure = value;
        } else if (key == "converged") {
            converged = value;
        } else if (key.rfind(meta_prefix, 0) == 0) {
            report.metadata[key.substr(std::string(meta_prefix).size())] = value;
        } else {
            throw ParseError(lineno, "unknown key '" + key + "'");
        }
    }
    if (!converged.empty()) {
        if (converged.size() != report.rows.size())
            throw ParseError(lineno, "converged flags do not match the number of rows");
        for (std::size_t i = 0; i < converged.size(); ++i)
            report.rows[i].converged = converged[i] == '1';
    }
}

void write_gnuplot(std::ostream& os, const ConvergenceReport& report)
{
    os << "# " << report.problem << ' ' << family_name(report.family) << " k=" << report.k << ": h e_h\n";
    for (const auto& r : report.rows)
        os << real17(r.h) << ' ' << real17(r.error) << '\n';
}

void write_report_files(const std::string& stem, const ConvergenceReport& report)
{
    auto csv = open_out(stem + ".csv");
    write_csv(csv, report);
    auto meta = open_out(stem + ".meta");
    write_metadata(meta, report);
    auto dat = open_out(stem + ".dat");
    write_gnuplot(dat, report);
    if (!csv || !meta || !dat)
        throw std::runtime_error("failed writing report files for '" + stem + "'");
}

ConvergenceReport read_report_files(const std::string& stem)
{
    ConvergenceReport report;
    auto csv = open_in(stem + ".csv");
    report.rows = read_csv(csv);
    auto meta = open_in(stem + ".meta");
    read_metadata(meta, report);
    return report;
}

} // namespace hho
