#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "polyvem/geometry.hpp"

namespace polyvem {

// Conforming polygonal mesh: node table plus counterclockwise simple elements.
// boundary_segments are the element edges with a single incident element,
// oriented as they appear in that element (domain on the left).
struct Mesh {
    std::vector<Point2> nodes;
    std::vector<Polygon> elements;
    std::vector<std::pair<int, int>> boundary_segments;

    // Seed of the generator run that produced the mesh, 0 when not generated.
    std::uint64_t rng_seed = 0;

    BoundingBox bbox() const { return bounding_box(nodes); }
    double total_area() const;
};

// Recomputes boundary_segments from element connectivity.
void rebuild_boundary_segments(Mesh& mesh);

// Flips clockwise elements in place so every element is counterclockwise.
void normalize_orientation(Mesh& mesh);

// Enforces the mesh invariants: indices in range, >= 3 distinct vertices per
// element, counterclockwise simple elements, interior edges shared by exactly
// two elements with opposite orientation, no duplicate nodes within
// 1e-10 * bbox diagonal. Throws MeshingFailure (or DegenerateElement) on
// violation.
void validate_mesh(const Mesh& mesh);

// Largest vertex-pair distance over all elements.
double mesh_h_max(const Mesh& mesh);

// Indices of nodes lying on some boundary segment.
std::vector<int> boundary_nodes(const Mesh& mesh);

} // namespace polyvem
