#include "polyvem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace polyvem {

double Mesh::total_area() const {
    double sum = 0.0;
    for (const Polygon& e : elements) sum += signed_area(e, nodes);
    return sum;
}

void rebuild_boundary_segments(Mesh& mesh) {
    std::map<std::pair<int, int>, int> count;
    for (const Polygon& e : mesh.elements) {
        const int n = e.size();
        for (int i = 0; i < n; ++i) {
            const int a = e.node_indices[i];
            const int b = e.node_indices[(i + 1) % n];
            count[{std::min(a, b), std::max(a, b)}]++;
        }
    }
    mesh.boundary_segments.clear();
    for (const Polygon& e : mesh.elements) {
        const int n = e.size();
        for (int i = 0; i < n; ++i) {
            const int a = e.node_indices[i];
            const int b = e.node_indices[(i + 1) % n];
            if (count[{std::min(a, b), std::max(a, b)}] == 1)
                mesh.boundary_segments.emplace_back(a, b);
        }
    }
}

void normalize_orientation(Mesh& mesh) {
    for (Polygon& e : mesh.elements) {
        if (signed_area(e, mesh.nodes) < 0.0)
            std::reverse(e.node_indices.begin(), e.node_indices.end());
    }
}

void validate_mesh(const Mesh& mesh) {
    const int n_nodes = static_cast<int>(mesh.nodes.size());
    for (const Point2& p : mesh.nodes)
        if (!p.is_finite()) throw MeshingFailure("mesh contains a non-finite node coordinate");

    std::map<std::pair<int, int>, int> oriented;
    std::map<std::pair<int, int>, int> undirected;
    for (std::size_t k = 0; k < mesh.elements.size(); ++k) {
        const Polygon& e = mesh.elements[k];
        const int n = e.size();
        if (n < 3)
            throw MeshingFailure("element " + std::to_string(k) + " has fewer than 3 vertices");
        std::set<int> distinct(e.node_indices.begin(), e.node_indices.end());
        if (static_cast<int>(distinct.size()) != n)
            throw MeshingFailure("element " + std::to_string(k) + " repeats a node index");
        for (int idx : e.node_indices)
            if (idx < 0 || idx >= n_nodes)
                throw MeshingFailure("element " + std::to_string(k) + " references a missing node");
        const std::vector<Point2> ring = polygon_ring(e, mesh.nodes);
        if (signed_area(ring) <= 0.0)
            throw MeshingFailure("element " + std::to_string(k) + " is not counterclockwise");
        if (!is_simple_polygon(ring))
            throw MeshingFailure("element " + std::to_string(k) + " is not simple");
        for (int i = 0; i < n; ++i) {
            const int a = e.node_indices[i];
            const int b = e.node_indices[(i + 1) % n];
            oriented[{a, b}]++;
            undirected[{std::min(a, b), std::max(a, b)}]++;
        }
    }
    for (const auto& [edge, cnt] : undirected) {
        if (cnt > 2)
            throw MeshingFailure("edge shared by more than two elements");
        if (cnt == 2) {
            // Both incidences must traverse the edge in opposite directions.
            if (oriented[{edge.first, edge.second}] != 1 || oriented[{edge.second, edge.first}] != 1)
                throw MeshingFailure("interior edge traversed twice in the same direction");
        }
    }

    // Duplicate node detection on a uniform grid of cells sized by the merge
    // tolerance.
    const double tol = 1e-10 * mesh.bbox().diagonal();
    if (tol > 0.0) {
        std::map<std::pair<long long, long long>, std::vector<int>> grid;
        auto cell_of = [tol](const Point2& p) {
            return std::make_pair(static_cast<long long>(std::floor(p.x / tol)),
                                  static_cast<long long>(std::floor(p.y / tol)));
        };
        for (int i = 0; i < n_nodes; ++i) {
            const auto c = cell_of(mesh.nodes[i]);
            for (long long dx = -1; dx <= 1; ++dx)
                for (long long dy = -1; dy <= 1; ++dy) {
                    auto it = grid.find({c.first + dx, c.second + dy});
                    if (it == grid.end()) continue;
                    for (int j : it->second)
                        if (mesh.nodes[i].distance(mesh.nodes[j]) < tol)
                            throw MeshingFailure("duplicate nodes " + std::to_string(j) + " and " +
                                                 std::to_string(i));
                }
            grid[c].push_back(i);
        }
    }
}

double mesh_h_max(const Mesh& mesh) {
    double h = 0.0;
    for (const Polygon& e : mesh.elements) {
        const std::vector<Point2> ring = polygon_ring(e, mesh.nodes);
        for (std::size_t i = 0; i < ring.size(); ++i)
            for (std::size_t j = i + 1; j < ring.size(); ++j)
                h = std::max(h, ring[i].distance(ring[j]));
    }
    return h;
}

std::vector<int> boundary_nodes(const Mesh& mesh) {
    std::set<int> ids;
    for (const auto& [a, b] : mesh.boundary_segments) {
        ids.insert(a);
        ids.insert(b);
    }
    return {ids.begin(), ids.end()};
}

} // namespace polyvem
