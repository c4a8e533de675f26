#include "polyvem/vem.hpp"

#include <cmath>

#include "polyvem/quadrature.hpp"

namespace polyvem {

EdgeAverages edge_averages(const ElementGeometry& elem) {
    const int n = elem.num_nodes();
    EdgeAverages out;
    out.phi_bar = 1.0 / n;
    out.q.resize(n, 2);
    // Edge a runs from node a to node a+1, so node a is shared by edges a-1
    // and a.
    for (int a = 0; a < n; ++a) {
        const int prev = (a + n - 1) % n;
        for (int i = 0; i < 2; ++i) {
            const double np = i == 0 ? elem.edge_normals[prev].x : elem.edge_normals[prev].y;
            const double na = i == 0 ? elem.edge_normals[a].x : elem.edge_normals[a].y;
            out.q(a, i) =
                (elem.edge_lengths[prev] * np + elem.edge_lengths[a] * na) / (4.0 * elem.area);
        }
    }
    return out;
}

VemProjection elastic_projection(const ElementGeometry& elem) {
    const int n = elem.num_nodes();
    const EdgeAverages avg = edge_averages(elem);
    const Point2 xb = elem.node_average;

    VemProjection proj;
    proj.h_r.setZero(2 * n, 3);
    proj.w_r.setZero(2 * n, 3);
    proj.h_c.setZero(2 * n, 3);
    proj.w_c.setZero(2 * n, 3);

    for (int a = 0; a < n; ++a) {
        const double dx = elem.vertices[a].x - xb.x;
        const double dy = elem.vertices[a].y - xb.y;
        const double q1 = avg.q(a, 0);
        const double q2 = avg.q(a, 1);
        const int r0 = 2 * a;

        proj.h_r(r0, 0) = 1.0;
        proj.h_r(r0, 2) = dy;
        proj.h_r(r0 + 1, 1) = 1.0;
        proj.h_r(r0 + 1, 2) = -dx;

        proj.w_r(r0, 0) = avg.phi_bar;
        proj.w_r(r0, 2) = q2;
        proj.w_r(r0 + 1, 1) = avg.phi_bar;
        proj.w_r(r0 + 1, 2) = -q1;

        proj.h_c(r0, 0) = dx;
        proj.h_c(r0, 2) = dy;
        proj.h_c(r0 + 1, 1) = dy;
        proj.h_c(r0 + 1, 2) = dx;

        proj.w_c(r0, 0) = 2.0 * q1;
        proj.w_c(r0, 2) = q2;
        proj.w_c(r0 + 1, 1) = 2.0 * q2;
        proj.w_c(r0 + 1, 2) = q1;
    }
    proj.p_p = proj.h_r * proj.w_r.transpose() + proj.h_c * proj.w_c.transpose();
    return proj;
}

VemProjection poisson_projection(const ElementGeometry& elem) {
    const int n = elem.num_nodes();
    const EdgeAverages avg = edge_averages(elem);
    const Point2 xb = elem.node_average;

    VemProjection proj;
    proj.h_r.setOnes(n, 1);
    proj.w_r.setConstant(n, 1, avg.phi_bar);
    proj.h_c.resize(n, 2);
    proj.w_c.resize(n, 2);
    for (int a = 0; a < n; ++a) {
        proj.h_c(a, 0) = elem.vertices[a].x - xb.x;
        proj.h_c(a, 1) = elem.vertices[a].y - xb.y;
        proj.w_c(a, 0) = 2.0 * avg.q(a, 0);
        proj.w_c(a, 1) = 2.0 * avg.q(a, 1);
    }
    proj.p_p = proj.h_r * proj.w_r.transpose() + proj.h_c * proj.w_c.transpose();
    return proj;
}

ElementStiffness elastic_stiffness(const ElementGeometry& elem, const ConstitutiveMatrix& d_matrix,
                                   double gamma) {
    if (!(gamma > 0.0)) throw Error("gamma must be positive");
    const int n = elem.num_nodes();
    const VemProjection proj = elastic_projection(elem);

    const double trace_hc = proj.h_c.squaredNorm();
    if (trace_hc <= 0.0)
        throw DegenerateElement("all element nodes coincide with the node average");
    const double alpha = gamma * elem.area * d_matrix.d.trace() / trace_hc;

    ElementStiffness out;
    out.consistency = elem.area * proj.w_c * d_matrix.d * proj.w_c.transpose();
    const Eigen::MatrixXd complement = Eigen::MatrixXd::Identity(2 * n, 2 * n) - proj.p_p;
    out.stability = alpha * complement.transpose() * complement;
    return out;
}

ElementStiffness poisson_stiffness(const ElementGeometry& elem) {
    const int n = elem.num_nodes();
    const VemProjection proj = poisson_projection(elem);

    ElementStiffness out;
    out.consistency = elem.area * proj.w_c * proj.w_c.transpose();
    const Eigen::MatrixXd complement = Eigen::MatrixXd::Identity(n, n) - proj.p_p;
    out.stability = complement.transpose() * complement;
    return out;
}

namespace {

// Cell average over the fan triangulation with a degree-2 Gauss rule.
double cell_average(const ElementGeometry& elem, const ScalarField& f) {
    const std::vector<Triangle> tris = fan_triangulate(elem.vertices);
    double sum = 0.0;
    for (const Triangle& t : tris) sum += integrate(t, 2, f);
    return sum / elem.area;
}

} // namespace

Eigen::VectorXd body_force_vector(const ElementGeometry& elem, const BodyForce& body_force) {
    const int n = elem.num_nodes();
    Eigen::VectorXd fe = Eigen::VectorXd::Zero(2 * n);
    if (body_force.is_zero()) return fe;
    const double bx = body_force.fx ? cell_average(elem, body_force.fx) : 0.0;
    const double by = body_force.fy ? cell_average(elem, body_force.fy) : 0.0;
    const double w = elem.area / n;
    for (int a = 0; a < n; ++a) {
        fe[2 * a] = w * bx;
        fe[2 * a + 1] = w * by;
    }
    return fe;
}

Eigen::VectorXd body_force_vector(const ElementGeometry& elem, const ScalarField& source) {
    const int n = elem.num_nodes();
    Eigen::VectorXd fe = Eigen::VectorXd::Zero(n);
    if (!source) return fe;
    const double s = cell_average(elem, source);
    fe.setConstant(elem.area * s / n);
    return fe;
}

Eigen::Vector4d traction_force_vector(const Point2& a, const Point2& b, const VectorField& traction) {
    Eigen::Vector4d fe = Eigen::Vector4d::Zero();
    if (!traction) return fe;
    const double len = a.distance(b);
    if (len == 0.0) throw DegenerateElement("traction edge endpoints coincide");
    // |e| f_hat / 2 per endpoint, f_hat the edge average via 2-point Gauss.
    const double tx = integrate_segment(a, b, 2, [&](const Point2& p) { return traction(p).x(); });
    const double ty = integrate_segment(a, b, 2, [&](const Point2& p) { return traction(p).y(); });
    fe << 0.5 * tx, 0.5 * ty, 0.5 * tx, 0.5 * ty;
    return fe;
}

Eigen::Vector2d traction_force_vector(const Point2& a, const Point2& b, const ScalarField& flux) {
    Eigen::Vector2d fe = Eigen::Vector2d::Zero();
    if (!flux) return fe;
    if (a.distance(b) == 0.0) throw DegenerateElement("traction edge endpoints coincide");
    const double t = integrate_segment(a, b, 2, flux);
    fe << 0.5 * t, 0.5 * t;
    return fe;
}

Eigen::VectorXd project_strain(const ElementGeometry& elem, const Eigen::VectorXd& nodal_values) {
    const int n = elem.num_nodes();
    if (nodal_values.size() == 2 * n) {
        const VemProjection proj = elastic_projection(elem);
        return proj.w_c.transpose() * nodal_values;
    }
    if (nodal_values.size() == n) {
        const VemProjection proj = poisson_projection(elem);
        return proj.w_c.transpose() * nodal_values;
    }
    throw DimensionError("nodal value vector length matches neither N nor 2N");
}

} // namespace polyvem
