#pragma once

#include <array>
#include <vector>

#include "polyvem/geometry.hpp"

namespace polyvem {

// Quadrature rule on a reference domain. Weights sum to 1; the mapped helpers
// scale by the physical measure.
struct QuadratureRule {
    struct Node {
        std::array<double, 3> barycentric; // l1, l2, l3 (segment rules use l1 only)
        double weight;
    };
    std::vector<Node> points;
};

// Symmetric Gauss rules on the reference triangle, exact for polynomials of
// the requested degree (2, 4 or 6).
const QuadratureRule& triangle_rule(int degree);

// Gauss-Legendre rule on [0,1] with the given point count (1..4).
const QuadratureRule& segment_rule(int npoints);

template <typename F>
double integrate(const Triangle& tri, int degree, F&& f) {
    const QuadratureRule& rule = triangle_rule(degree);
    const double area = tri.signed_area();
    double sum = 0.0;
    for (const auto& n : rule.points) {
        const Point2 p = tri.a * n.barycentric[0] + tri.b * n.barycentric[1] + tri.c * n.barycentric[2];
        sum += n.weight * f(p);
    }
    return sum * area;
}

template <typename F>
double integrate_segment(const Point2& a, const Point2& b, int npoints, F&& f) {
    const QuadratureRule& rule = segment_rule(npoints);
    const double len = a.distance(b);
    double sum = 0.0;
    for (const auto& n : rule.points) {
        const double t = n.barycentric[0];
        sum += n.weight * f(a + (b - a) * t);
    }
    return sum * len;
}

} // namespace polyvem
