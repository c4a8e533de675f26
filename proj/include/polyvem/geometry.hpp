#pragma once

#include <cmath>
#include <vector>

#include "polyvem/errors.hpp"

namespace polyvem {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    Point2() = default;
    Point2(double x_, double y_) : x(x_), y(y_) {}

    Point2 operator+(const Point2& o) const { return {x + o.x, y + o.y}; }
    Point2 operator-(const Point2& o) const { return {x - o.x, y - o.y}; }
    Point2 operator*(double s) const { return {x * s, y * s}; }
    Point2 operator/(double s) const { return {x / s, y / s}; }

    double dot(const Point2& o) const { return x * o.x + y * o.y; }
    // z-component of the 2D cross product
    double cross(const Point2& o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    double squared_norm() const { return x * x + y * y; }
    double distance(const Point2& o) const { return (*this - o).norm(); }
    bool is_finite() const { return std::isfinite(x) && std::isfinite(y); }
};

inline Point2 operator*(double s, const Point2& p) { return p * s; }

// A polygonal element as an ordered (counterclockwise) list of indices into a
// node table. N = number of edges = number of nodes; edge a joins node a to
// node (a+1) mod N.
struct Polygon {
    std::vector<int> node_indices;

    Polygon() = default;
    explicit Polygon(std::vector<int> idx) : node_indices(std::move(idx)) {}
    int size() const { return static_cast<int>(node_indices.size()); }
};

struct Triangle {
    Point2 a, b, c;
    double signed_area() const { return 0.5 * (b - a).cross(c - a); }
    Point2 centroid() const { return (a + b + c) / 3.0; }
};

// Per-element quantities used by every element-level computation: area |E|,
// the node average of the vertex coordinates, edge lengths |e_a| and outward
// unit normals n_a. Vertex coordinates are kept in element order so that
// element routines do not need the global node table.
struct ElementGeometry {
    std::vector<Point2> vertices;
    double area = 0.0;
    Point2 node_average;
    std::vector<double> edge_lengths;
    std::vector<Point2> edge_normals;

    int num_nodes() const { return static_cast<int>(vertices.size()); }
};

// Extent of a point set, used to make tolerances scale-invariant.
struct BoundingBox {
    Point2 min{0, 0};
    Point2 max{0, 0};
    double width() const { return max.x - min.x; }
    double height() const { return max.y - min.y; }
    double diagonal() const { return (max - min).norm(); }
    double scale() const { return std::max(width(), height()); }
};

BoundingBox bounding_box(const std::vector<Point2>& points);

// Ring-of-points primitives. The index-based overloads below resolve the
// polygon against a node table and forward here.
double signed_area(const std::vector<Point2>& ring);
Point2 node_average(const std::vector<Point2>& ring);
Point2 area_centroid(const std::vector<Point2>& ring);
std::vector<Point2> edge_normals(const std::vector<Point2>& ring);
std::vector<double> edge_lengths(const std::vector<Point2>& ring);
std::vector<Triangle> fan_triangulate(const std::vector<Point2>& ring);
bool is_simple_polygon(const std::vector<Point2>& ring);
bool is_convex_polygon(const std::vector<Point2>& ring, double tol = 1e-12);

double signed_area(const Polygon& polygon, const std::vector<Point2>& nodes);
Point2 node_average(const Polygon& polygon, const std::vector<Point2>& nodes);
std::vector<Point2> edge_normals(const Polygon& polygon, const std::vector<Point2>& nodes);
std::vector<Triangle> fan_triangulate(const Polygon& polygon, const std::vector<Point2>& nodes);

std::vector<Point2> polygon_ring(const Polygon& polygon, const std::vector<Point2>& nodes);
ElementGeometry element_geometry(const Polygon& polygon, const std::vector<Point2>& nodes);
ElementGeometry element_geometry(const std::vector<Point2>& ring);

} // namespace polyvem
