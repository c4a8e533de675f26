#include "polyvem/fem.hpp"

#include "polyvem/quadrature.hpp"

namespace polyvem {

namespace {

double triangle_area(const std::array<Point2, 3>& n) {
    const double area = 0.5 * (n[1] - n[0]).cross(n[2] - n[0]);
    if (area <= 0.0) throw DegenerateElement("triangle area is not positive");
    return area;
}

} // namespace

std::array<Point2, 3> Tri3ShapeFunctions::gradients(const std::array<Point2, 3>& nodes) {
    const double inv2a = 1.0 / (2.0 * triangle_area(nodes));
    std::array<Point2, 3> grads;
    for (int i = 0; i < 3; ++i) {
        const Point2& pj = nodes[(i + 1) % 3];
        const Point2& pk = nodes[(i + 2) % 3];
        grads[i] = Point2{pj.y - pk.y, pk.x - pj.x} * inv2a;
    }
    return grads;
}

std::array<double, 3> Tri3ShapeFunctions::barycentric(const std::array<Point2, 3>& nodes,
                                                      const Point2& p) {
    const double inv2a = 1.0 / (2.0 * triangle_area(nodes));
    std::array<double, 3> l;
    for (int i = 0; i < 3; ++i) {
        const Point2& pj = nodes[(i + 1) % 3];
        const Point2& pk = nodes[(i + 2) % 3];
        l[i] = (pj - p).cross(pk - p) * inv2a;
    }
    return l;
}

Eigen::Matrix<double, 6, 6> t3_stiffness(const std::array<Point2, 3>& nodes,
                                         const ConstitutiveMatrix& d_matrix) {
    const double area = triangle_area(nodes);
    const std::array<Point2, 3> g = Tri3ShapeFunctions::gradients(nodes);

    // Strain rows [eps11, eps22, eps12] with tensorial shear (half the
    // engineering value); the factor of 2 sits in the constitutive matrix.
    Eigen::Matrix<double, 3, 6> b;
    b.setZero();
    for (int i = 0; i < 3; ++i) {
        b(0, 2 * i) = g[i].x;
        b(1, 2 * i + 1) = g[i].y;
        b(2, 2 * i) = 0.5 * g[i].y;
        b(2, 2 * i + 1) = 0.5 * g[i].x;
    }
    return area * b.transpose() * d_matrix.d * b;
}

Eigen::Matrix<double, 6, 1> t3_body_force(const std::array<Point2, 3>& nodes,
                                          const BodyForce& body_force) {
    Eigen::Matrix<double, 6, 1> fe = Eigen::Matrix<double, 6, 1>::Zero();
    if (body_force.is_zero()) return fe;
    const QuadratureRule& rule = triangle_rule(2);
    const double area = triangle_area(nodes);
    for (const auto& qn : rule.points) {
        const Point2 p = nodes[0] * qn.barycentric[0] + nodes[1] * qn.barycentric[1] +
                         nodes[2] * qn.barycentric[2];
        const Eigen::Vector2d bval = body_force(p);
        for (int i = 0; i < 3; ++i) {
            const double w = qn.weight * area * qn.barycentric[i];
            fe[2 * i] += w * bval.x();
            fe[2 * i + 1] += w * bval.y();
        }
    }
    return fe;
}

Eigen::Matrix<double, 4, 1> t3_traction_force(const Point2& a, const Point2& b,
                                              const VectorField& traction) {
    Eigen::Matrix<double, 4, 1> fe = Eigen::Matrix<double, 4, 1>::Zero();
    if (!traction) return fe;
    const QuadratureRule& rule = segment_rule(2);
    const double len = a.distance(b);
    if (len == 0.0) throw DegenerateElement("traction edge endpoints coincide");
    for (const auto& qn : rule.points) {
        const double t = qn.barycentric[0];
        const Eigen::Vector2d f = traction(a + (b - a) * t);
        const double w = qn.weight * len;
        fe[0] += w * (1.0 - t) * f.x();
        fe[1] += w * (1.0 - t) * f.y();
        fe[2] += w * t * f.x();
        fe[3] += w * t * f.y();
    }
    return fe;
}

Eigen::Matrix3d t3_laplacian_stiffness(const std::array<Point2, 3>& nodes) {
    const double area = triangle_area(nodes);
    const std::array<Point2, 3> g = Tri3ShapeFunctions::gradients(nodes);
    Eigen::Matrix3d k;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) k(i, j) = area * g[i].dot(g[j]);
    return k;
}

Eigen::Vector3d t3_source_force(const std::array<Point2, 3>& nodes, const ScalarField& source) {
    Eigen::Vector3d fe = Eigen::Vector3d::Zero();
    if (!source) return fe;
    const QuadratureRule& rule = triangle_rule(2);
    const double area = triangle_area(nodes);
    for (const auto& qn : rule.points) {
        const Point2 p = nodes[0] * qn.barycentric[0] + nodes[1] * qn.barycentric[1] +
                         nodes[2] * qn.barycentric[2];
        const double s = source(p);
        for (int i = 0; i < 3; ++i) fe[i] += qn.weight * area * qn.barycentric[i] * s;
    }
    return fe;
}

Eigen::Vector2d t3_flux_force(const Point2& a, const Point2& b, const ScalarField& flux) {
    Eigen::Vector2d fe = Eigen::Vector2d::Zero();
    if (!flux) return fe;
    const QuadratureRule& rule = segment_rule(2);
    const double len = a.distance(b);
    for (const auto& qn : rule.points) {
        const double t = qn.barycentric[0];
        const double f = flux(a + (b - a) * t);
        fe[0] += qn.weight * len * (1.0 - t) * f;
        fe[1] += qn.weight * len * t * f;
    }
    return fe;
}

} // namespace polyvem
