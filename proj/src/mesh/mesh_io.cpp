#include "hho/mesh_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "hho/errors.hpp"

namespace hho {

namespace {

class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    // Next non-blank, non-comment line; false at end of stream.
    bool next(std::string& line)
    {
        while (std::getline(in_, line)) {
            ++line_no_;
            const auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#')
                continue;
            return true;
        }
        return false;
    }

    std::size_t line_no() const { return line_no_; }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_no_, what); }

private:
    std::istream& in_;
    std::size_t line_no_ = 0;
};

std::size_t read_count(LineReader& reader, const std::string& keyword)
{
    std::string line;
    if (!reader.next(line))
        reader.fail("unexpected end of file, expected '" + keyword + " <count>'");
    std::istringstream ls(line);
    std::string word;
    long long count = -1;
    if (!(ls >> word >> count) || word != keyword || count < 0)
        reader.fail("expected '" + keyword + " <count>'");
    std::string extra;
    if (ls >> extra)
        reader.fail("trailing characters after '" + keyword + "' header");
    return static_cast<std::size_t>(count);
}

} // namespace

void write_mesh(const PolyMesh& mesh, std::ostream& out, MeshFormat)
{
    out << "polymesh 2d\n";
    out << "vertices " << mesh.n_vertices() << '\n';
    out << std::setprecision(17);
    for (const auto& p : mesh.vertices())
        out << p.x() << ' ' << p.y() << '\n';
    out << "cells " << mesh.n_cells() << '\n';
    for (const auto& c : mesh.cells()) {
        out << c.vertices.size();
        for (auto v : c.vertices)
            out << ' ' << v;
        out << '\n';
    }
}

void write_mesh(const PolyMesh& mesh, const std::filesystem::path& path, MeshFormat format)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    write_mesh(mesh, out, format);
}

PolyMesh read_mesh(std::istream& in, MeshFormat)
{
    LineReader reader(in);
    std::string line;
    if (!reader.next(line))
        throw ParseError(reader.line_no(), "empty mesh file");
    {
        std::istringstream ls(line);
        std::string a, b, extra;
        if (!(ls >> a >> b) || a != "polymesh" || b != "2d" || (ls >> extra))
            reader.fail("expected header 'polymesh 2d'");
    }

    const std::size_t nv = read_count(reader, "vertices");
    std::vector<Point> vertices;
    vertices.reserve(nv);
    for (std::size_t i = 0; i < nv; ++i) {
        if (!reader.next(line))
            reader.fail("unexpected end of file in vertex block");
        std::istringstream ls(line);
        double x = 0.0, y = 0.0;
        std::string extra;
        if (!(ls >> x >> y) || (ls >> extra))
            reader.fail("expected 'x y'");
        vertices.emplace_back(x, y);
    }

    const std::size_t nc = read_count(reader, "cells");
    std::vector<std::vector<std::size_t>> cells;
    cells.reserve(nc);
    for (std::size_t c = 0; c < nc; ++c) {
        if (!reader.next(line))
            reader.fail("unexpected end of file in cell block");
        std::istringstream ls(line);
        long long m = 0;
        if (!(ls >> m) || m < 3)
            reader.fail("cell must start with a vertex count >= 3");
        std::vector<std::size_t> loop;
        for (long long k = 0; k < m; ++k) {
            long long v = -1;
            if (!(ls >> v))
                reader.fail("cell lists fewer vertex ids than declared");
            if (v < 0 || static_cast<std::size_t>(v) >= nv)
                reader.fail("vertex id " + std::to_string(v) + " out of range");
            loop.push_back(static_cast<std::size_t>(v));
        }
        std::string extra;
        if (ls >> extra)
            reader.fail("cell lists more vertex ids than declared");
        cells.push_back(std::move(loop));
    }
    if (reader.next(line))
        reader.fail("unexpected content after cell block");

    return build_topology(std::move(vertices), std::move(cells));
}

PolyMesh read_mesh(const std::filesystem::path& path, MeshFormat format)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open mesh file '" + path.string() + "'");
    return read_mesh(in, format);
}

} // namespace hho
