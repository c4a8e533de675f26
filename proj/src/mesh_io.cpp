#include "polyvem/mesh_io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace polyvem {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Line cursor over the text with comment stripping; keeps 1-based line
// numbers for error reporting.
class LineReader {
  public:
    explicit LineReader(const std::string& text) : stream_(text) {}

    // Next non-empty line with comments removed; false at end of input.
    bool next(std::string& out) {
        std::string raw;
        while (std::getline(stream_, raw)) {
            ++line_;
            const auto hash = raw.find('#');
            if (hash != std::string::npos) raw.erase(hash);
            // Trim whitespace.
            const auto begin = raw.find_first_not_of(" \t\r\n");
            if (begin == std::string::npos) continue;
            const auto end = raw.find_last_not_of(" \t\r\n");
            out = raw.substr(begin, end - begin + 1);
            return true;
        }
        return false;
    }

    int line() const { return line_; }

  private:
    std::istringstream stream_;
    int line_ = 0;
};

std::string expect_line(LineReader& reader, const std::string& what) {
    std::string line;
    if (!reader.next(line)) throw ParseError("unexpected end of input, expected " + what, reader.line() + 1);
    return line;
}

} // namespace

std::string render_mesh_file(const MeshFile& file) {
    std::ostringstream os;
    os << "veamy-mesh 1\n";
    os << "nodes " << file.mesh.nodes.size() << "\n";
    for (const Point2& p : file.mesh.nodes) os << fmt17(p.x) << " " << fmt17(p.y) << "\n";
    os << "elements " << file.mesh.elements.size() << "\n";
    for (const Polygon& e : file.mesh.elements) {
        os << e.size();
        for (int idx : e.node_indices) os << " " << idx;
        os << "\n";
    }
    if (!file.essential.empty()) {
        os << "essential " << file.essential.size() << "\n";
        for (const EssentialLine& c : file.essential)
            os << "node " << c.node << " " << c.axis << " " << fmt17(c.value) << "\n";
    }
    if (!file.natural.empty()) {
        os << "natural " << file.natural.size() << "\n";
        for (const NaturalLine& c : file.natural)
            os << "segment " << c.n0 << " " << c.n1 << " " << fmt17(c.tx) << " " << fmt17(c.ty)
               << "\n";
    }
    return os.str();
}

MeshFile parse_mesh_file(const std::string& text) {
    LineReader reader(text);
    MeshFile file;

    {
        const std::string header = expect_line(reader, "header");
        std::istringstream is(header);
        std::string magic;
        int version = 0;
        if (!(is >> magic >> version) || magic != "veamy-mesh" || version != 1)
            throw ParseError("expected header 'veamy-mesh 1'", reader.line());
    }

    int n_nodes = 0;
    {
        const std::string line = expect_line(reader, "node count");
        std::istringstream is(line);
        std::string kw;
        if (!(is >> kw >> n_nodes) || kw != "nodes" || n_nodes < 0)
            throw ParseError("expected 'nodes <count>'", reader.line());
    }
    for (int i = 0; i < n_nodes; ++i) {
        const std::string line = expect_line(reader, "node coordinates");
        std::istringstream is(line);
        Point2 p;
        if (!(is >> p.x >> p.y)) throw ParseError("expected 'x y'", reader.line());
        if (!p.is_finite()) throw ParseError("non-finite node coordinate", reader.line());
        file.mesh.nodes.push_back(p);
    }

    int n_elements = 0;
    {
        const std::string line = expect_line(reader, "element count");
        std::istringstream is(line);
        std::string kw;
        if (!(is >> kw >> n_elements) || kw != "elements" || n_elements < 0)
            throw ParseError("expected 'elements <count>'", reader.line());
    }
    std::vector<int> element_lines;
    for (int i = 0; i < n_elements; ++i) {
        const std::string line = expect_line(reader, "element connectivity");
        std::istringstream is(line);
        int k = 0;
        if (!(is >> k) || k < 3) throw ParseError("expected 'k i0 ... i(k-1)' with k >= 3", reader.line());
        Polygon e;
        for (int j = 0; j < k; ++j) {
            int idx = 0;
            if (!(is >> idx)) throw ParseError("element lists fewer nodes than announced", reader.line());
            if (idx < 0 || idx >= n_nodes)
                throw IndexError("element references node " + std::to_string(idx) + " of " +
                                     std::to_string(n_nodes),
                                 reader.line());
            e.node_indices.push_back(idx);
        }
        file.mesh.elements.push_back(std::move(e));
        element_lines.push_back(reader.line());
    }

    std::string line;
    while (reader.next(line)) {
        std::istringstream is(line);
        std::string kw;
        int count = 0;
        if (!(is >> kw >> count) || count < 0)
            throw ParseError("expected 'essential <count>' or 'natural <count>'", reader.line());
        if (kw == "essential") {
            for (int i = 0; i < count; ++i) {
                const std::string row = expect_line(reader, "essential constraint");
                std::istringstream ris(row);
                std::string tag;
                EssentialLine c;
                std::string axis;
                if (!(ris >> tag >> c.node >> axis >> c.value) || tag != "node" || axis.size() != 1 ||
                    (axis[0] != 'x' && axis[0] != 'y' && axis[0] != 'b'))
                    throw ParseError("expected 'node <idx> <x|y|b> <value>'", reader.line());
                if (c.node < 0 || c.node >= n_nodes)
                    throw IndexError("constraint references node " + std::to_string(c.node) + " of " +
                                         std::to_string(n_nodes),
                                     reader.line());
                c.axis = axis[0];
                file.essential.push_back(c);
            }
        } else if (kw == "natural") {
            for (int i = 0; i < count; ++i) {
                const std::string row = expect_line(reader, "natural constraint");
                std::istringstream ris(row);
                std::string tag;
                NaturalLine c;
                if (!(ris >> tag >> c.n0 >> c.n1 >> c.tx >> c.ty) || tag != "segment")
                    throw ParseError("expected 'segment <i0> <i1> <tx> <ty>'", reader.line());
                if (c.n0 < 0 || c.n0 >= n_nodes || c.n1 < 0 || c.n1 >= n_nodes)
                    throw IndexError("constraint references a node out of range", reader.line());
                file.natural.push_back(c);
            }
        } else {
            throw ParseError("unknown section '" + kw + "'", reader.line());
        }
    }

    for (std::size_t i = 0; i < file.mesh.elements.size(); ++i) {
        const std::vector<Point2> ring = polygon_ring(file.mesh.elements[i], file.mesh.nodes);
        if (!is_simple_polygon(ring))
            throw ParseError("element is not simple", element_lines[i]);
        try {
            signed_area(ring);
        } catch (const DegenerateElement& e) {
            throw ParseError(e.what(), element_lines[i]);
        }
    }
    normalize_orientation(file.mesh);
    rebuild_boundary_segments(file.mesh);
    validate_mesh(file.mesh);
    return file;
}

std::vector<Constraint> mesh_file_constraints(const MeshFile& file) {
    std::vector<Constraint> out;
    for (const EssentialLine& c : file.essential) {
        const ConstraintDirection dir = c.axis == 'x'   ? ConstraintDirection::Horizontal
                                        : c.axis == 'y' ? ConstraintDirection::Vertical
                                                        : ConstraintDirection::Both;
        out.push_back(Constraint::essential_point(file.mesh.nodes[c.node], dir, c.value));
    }
    for (const NaturalLine& c : file.natural) {
        const Point2 a = file.mesh.nodes[c.n0];
        const Point2 b = file.mesh.nodes[c.n1];
        out.push_back(Constraint::natural_segment(a, b, ConstraintDirection::Horizontal, c.tx));
        out.push_back(Constraint::natural_segment(a, b, ConstraintDirection::Vertical, c.ty));
    }
    return out;
}

PolyMesherFile parse_polymesher(const std::string& text) {
    LineReader reader(text);
    PolyMesherFile file;

    int n_nodes = 0, n_elements = 0;
    {
        const std::string line = expect_line(reader, "counts");
        std::istringstream is(line);
        if (!(is >> n_nodes >> n_elements) || n_nodes < 0 || n_elements < 0)
            throw ParseError("expected '<NNodes> <NElems>'", reader.line());
    }
    for (int i = 0; i < n_nodes; ++i) {
        const std::string line = expect_line(reader, "node coordinates");
        std::istringstream is(line);
        Point2 p;
        if (!(is >> p.x >> p.y)) throw ParseError("expected 'x y'", reader.line());
        file.mesh.nodes.push_back(p);
    }
    for (int i = 0; i < n_elements; ++i) {
        const std::string line = expect_line(reader, "element connectivity");
        std::istringstream is(line);
        int k = 0;
        if (!(is >> k) || k < 3) throw ParseError("expected 'k v1 ... vk' with k >= 3", reader.line());
        Polygon e;
        for (int j = 0; j < k; ++j) {
            int idx = 0;
            if (!(is >> idx)) throw ParseError("element lists fewer nodes than announced", reader.line());
            if (idx < 1 || idx > n_nodes)
                throw IndexError("element references node " + std::to_string(idx) + " of " +
                                     std::to_string(n_nodes) + " (1-based)",
                                 reader.line());
            e.node_indices.push_back(idx - 1);
        }
        file.mesh.elements.push_back(std::move(e));
    }

    std::string line;
    while (reader.next(line)) {
        std::istringstream is(line);
        std::string kw;
        int count = 0;
        if (!(is >> kw >> count) || count < 0)
            throw ParseError("expected 'supp <count>' or 'load <count>'", reader.line());
        if (kw == "supp") {
            for (int i = 0; i < count; ++i) {
                const std::string row = expect_line(reader, "support row");
                std::istringstream ris(row);
                int node = 0, fx = 0, fy = 0;
                if (!(ris >> node >> fx >> fy) || (fx != 0 && fx != 1) || (fy != 0 && fy != 1))
                    throw ParseError("expected 'node fx_flag fy_flag' with flags in {0,1}",
                                     reader.line());
                if (node < 1 || node > n_nodes)
                    throw IndexError("support references a node out of range", reader.line());
                if (!fx && !fy) continue;
                const ConstraintDirection dir = fx && fy ? ConstraintDirection::Both
                                                : fx     ? ConstraintDirection::Horizontal
                                                         : ConstraintDirection::Vertical;
                file.essential.push_back(
                    Constraint::essential_point(file.mesh.nodes[node - 1], dir, 0.0));
            }
        } else if (kw == "load") {
            for (int i = 0; i < count; ++i) {
                const std::string row = expect_line(reader, "load row");
                std::istringstream ris(row);
                int node = 0;
                double lx = 0.0, ly = 0.0;
                if (!(ris >> node >> lx >> ly))
                    throw ParseError("expected 'node Fx Fy'", reader.line());
                if (node < 1 || node > n_nodes)
                    throw IndexError("load references a node out of range", reader.line());
                file.loads.emplace_back(node - 1, lx, ly);
            }
        } else {
            throw ParseError("unknown section '" + kw + "'", reader.line());
        }
    }

    normalize_orientation(file.mesh);
    rebuild_boundary_segments(file.mesh);
    validate_mesh(file.mesh);
    return file;
}

std::string render_solution_csv(const Mesh& mesh, const Eigen::VectorXd& solution,
                                int n_components) {
    if (solution.size() != static_cast<Eigen::Index>(mesh.nodes.size()) * n_components)
        throw DimensionError("solution length does not match the mesh dof count");
    std::ostringstream os;
    os << "node,x,y,u1";
    if (n_components == 2) os << ",u2";
    os << "\n";
    for (std::size_t i = 0; i < mesh.nodes.size(); ++i) {
        os << i << "," << fmt17(mesh.nodes[i].x) << "," << fmt17(mesh.nodes[i].y);
        for (int c = 0; c < n_components; ++c)
            os << "," << fmt17(solution[static_cast<int>(i) * n_components + c]);
        os << "\n";
    }
    return os.str();
}

Eigen::VectorXd parse_solution_csv(const std::string& text, int n_components) {
    LineReader reader(text);
    std::string header = expect_line(reader, "csv header");
    std::vector<double> values;
    std::string line;
    while (reader.next(line)) {
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream is(line);
        int node = 0;
        double x = 0, y = 0;
        if (!(is >> node >> x >> y)) throw ParseError("expected 'node,x,y,u...'", reader.line());
        for (int c = 0; c < n_components; ++c) {
            double u = 0;
            if (!(is >> u)) throw ParseError("missing solution component", reader.line());
            values.push_back(u);
        }
    }
    return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw Error("cannot open " + tmp.string() + " for writing");
        os << content;
        if (!os.flush()) throw Error("write to " + tmp.string() + " failed");
    }
    fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("cannot open " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

} // namespace polyvem
