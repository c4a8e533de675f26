#include "polyvem/geometry.hpp"

#include <algorithm>
#include <limits>

namespace polyvem {

namespace {

// Relative degeneracy tolerance; areas below tol*scale^2 are rejected.
constexpr double kDegeneracyTol = 1e-14;

// Proper or improper intersection of two closed segments, excluding the case
// where they only share the common endpoint of consecutive edges (handled by
// the caller).
bool segments_intersect(const Point2& p1, const Point2& p2, const Point2& q1, const Point2& q2,
                        double tol) {
    const Point2 r = p2 - p1;
    const Point2 s = q2 - q1;
    const double denom = r.cross(s);
    const Point2 qp = q1 - p1;
    if (std::abs(denom) > tol) {
        const double t = qp.cross(s) / denom;
        const double u = qp.cross(r) / denom;
        return t > tol && t < 1.0 - tol && u > tol && u < 1.0 - tol;
    }
    // Parallel: overlapping collinear segments count as an intersection.
    if (std::abs(qp.cross(r)) > tol) return false;
    const double rr = r.dot(r);
    if (rr == 0.0) return false;
    double t0 = qp.dot(r) / rr;
    double t1 = (q2 - p1).dot(r) / rr;
    if (t0 > t1) std::swap(t0, t1);
    return t0 < 1.0 - tol && t1 > tol;
}

} // namespace

BoundingBox bounding_box(const std::vector<Point2>& points) {
    BoundingBox box;
    if (points.empty()) return box;
    box.min = box.max = points.front();
    for (const Point2& p : points) {
        box.min.x = std::min(box.min.x, p.x);
        box.min.y = std::min(box.min.y, p.y);
        box.max.x = std::max(box.max.x, p.x);
        box.max.y = std::max(box.max.y, p.y);
    }
    return box;
}

double signed_area(const std::vector<Point2>& ring) {
    const int n = static_cast<int>(ring.size());
    if (n < 3) throw DegenerateElement("polygon has fewer than 3 vertices");
    double twice = 0.0;
    for (int i = 0; i < n; ++i) {
        const Point2& p = ring[i];
        const Point2& q = ring[(i + 1) % n];
        twice += p.cross(q);
    }
    const double area = 0.5 * twice;
    const double s = bounding_box(ring).scale();
    if (std::abs(area) <= kDegeneracyTol * s * s)
        throw DegenerateElement("polygon area vanishes relative to its extent");
    return area;
}

Point2 node_average(const std::vector<Point2>& ring) {
    if (ring.size() < 3) throw DegenerateElement("polygon has fewer than 3 vertices");
    Point2 sum;
    for (const Point2& p : ring) sum = sum + p;
    return sum / static_cast<double>(ring.size());
}

Point2 area_centroid(const std::vector<Point2>& ring) {
    const int n = static_cast<int>(ring.size());
    const double area = signed_area(ring);
    Point2 c;
    for (int i = 0; i < n; ++i) {
        const Point2& p = ring[i];
        const Point2& q = ring[(i + 1) % n];
        const double w = p.cross(q);
        c = c + (p + q) * w;
    }
    return c / (6.0 * area);
}

std::vector<double> edge_lengths(const std::vector<Point2>& ring) {
    const int n = static_cast<int>(ring.size());
    std::vector<double> lengths(n);
    for (int i = 0; i < n; ++i) lengths[i] = ring[i].distance(ring[(i + 1) % n]);
    return lengths;
}

std::vector<Point2> edge_normals(const std::vector<Point2>& ring) {
    const int n = static_cast<int>(ring.size());
    const double s = bounding_box(ring).scale();
    std::vector<Point2> normals(n);
    for (int i = 0; i < n; ++i) {
        const Point2& p = ring[i];
        const Point2& q = ring[(i + 1) % n];
        const Point2 d = q - p;
        const double len = d.norm();
        if (len <= kDegeneracyTol * s) throw DegenerateElement("zero-length edge");
        // Rotate the edge vector by -90 degrees; outward for CCW rings.
        normals[i] = Point2{d.y, -d.x} / len;
    }
    return normals;
}

std::vector<Triangle> fan_triangulate(const std::vector<Point2>& ring) {
    const int n = static_cast<int>(ring.size());
    const Point2 c = area_centroid(ring);
    std::vector<Triangle> tris;
    tris.reserve(n);
    if (n == 3) {
        tris.push_back({ring[0], ring[1], ring[2]});
        if (tris.back().signed_area() <= 0.0)
            throw TriangulationFailure("triangle is not counterclockwise");
        return tris;
    }
    for (int i = 0; i < n; ++i) {
        Triangle t{c, ring[i], ring[(i + 1) % n]};
        if (t.signed_area() <= 0.0)
            throw TriangulationFailure("polygon is not star-shaped with respect to its centroid");
        tris.push_back(t);
    }
    return tris;
}

bool is_simple_polygon(const std::vector<Point2>& ring) {
    const int n = static_cast<int>(ring.size());
    if (n < 3) return false;
    const double s = bounding_box(ring).scale();
    const double tol = 1e-12;
    // Distinct consecutive vertices.
    for (int i = 0; i < n; ++i)
        if (ring[i].distance(ring[(i + 1) % n]) <= kDegeneracyTol * s) return false;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            if (segments_intersect(ring[i], ring[(i + 1) % n], ring[j], ring[(j + 1) % n], tol))
                return false;
        }
    }
    // Repeated non-consecutive vertices pinch the ring.
    for (int i = 0; i < n; ++i)
        for (int j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;
            if (ring[i].distance(ring[j]) <= 1e-12 * std::max(1.0, s)) return false;
        }
    return true;
}

bool is_convex_polygon(const std::vector<Point2>& ring, double tol) {
    const int n = static_cast<int>(ring.size());
    if (n < 3) return false;
    for (int i = 0; i < n; ++i) {
        const Point2 e1 = ring[(i + 1) % n] - ring[i];
        const Point2 e2 = ring[(i + 2) % n] - ring[(i + 1) % n];
        if (e1.cross(e2) < -tol) return false;
    }
    return true;
}

std::vector<Point2> polygon_ring(const Polygon& polygon, const std::vector<Point2>& nodes) {
    std::vector<Point2> ring;
    ring.reserve(polygon.node_indices.size());
    for (int idx : polygon.node_indices) {
        if (idx < 0 || idx >= static_cast<int>(nodes.size()))
            throw DimensionError("polygon node index out of range");
        ring.push_back(nodes[idx]);
    }
    return ring;
}

double signed_area(const Polygon& polygon, const std::vector<Point2>& nodes) {
    return signed_area(polygon_ring(polygon, nodes));
}

Point2 node_average(const Polygon& polygon, const std::vector<Point2>& nodes) {
    return node_average(polygon_ring(polygon, nodes));
}

std::vector<Point2> edge_normals(const Polygon& polygon, const std::vector<Point2>& nodes) {
    return edge_normals(polygon_ring(polygon, nodes));
}

std::vector<Triangle> fan_triangulate(const Polygon& polygon, const std::vector<Point2>& nodes) {
    return fan_triangulate(polygon_ring(polygon, nodes));
}

ElementGeometry element_geometry(const std::vector<Point2>& ring) {
    ElementGeometry geom;
    geom.vertices = ring;
    geom.area = signed_area(ring);
    if (geom.area <= 0.0) throw DegenerateElement("element is not counterclockwise");
    geom.node_average = node_average(ring);
    geom.edge_lengths = edge_lengths(ring);
    geom.edge_normals = edge_normals(ring);
    return geom;
}

ElementGeometry element_geometry(const Polygon& polygon, const std::vector<Point2>& nodes) {
    return element_geometry(polygon_ring(polygon, nodes));
}

} // namespace polyvem
