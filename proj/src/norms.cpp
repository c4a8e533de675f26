#include "polyvem/norms.hpp"

#include <cmath>

#include "polyvem/fem.hpp"
#include "polyvem/quadrature.hpp"
#include "polyvem/vem.hpp"

namespace polyvem {

namespace {

Eigen::VectorXd element_values(const Polygon& e, const Eigen::VectorXd& solution,
                               int n_components) {
    const int n = e.size();
    Eigen::VectorXd d(n * n_components);
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n_components; ++c)
            d[a * n_components + c] = solution[e.node_indices[a] * n_components + c];
    return d;
}

// Linear field extracted from the element nodal values: the projected strain
// and rotation plus the nodal mean. For triangles this coincides with the
// shape-function interpolant.
struct ProjectedField {
    int n_components = 2;
    Point2 x_bar;
    Eigen::Vector2d mean = Eigen::Vector2d::Zero();
    Eigen::Matrix2d gradient = Eigen::Matrix2d::Zero(); // full gradient (strain + rotation)
    Eigen::Vector3d voigt_strain = Eigen::Vector3d::Zero();

    Eigen::Vector2d displacement(const Point2& p) const {
        const Eigen::Vector2d dx(p.x - x_bar.x, p.y - x_bar.y);
        return mean + gradient * dx;
    }
    double scalar(const Point2& p) const { return displacement(p).x(); }
};

ProjectedField projected_field(const ElementGeometry& geom, const Eigen::VectorXd& d,
                               int n_components) {
    ProjectedField field;
    field.n_components = n_components;
    field.x_bar = geom.node_average;
    if (n_components == 2) {
        const VemProjection proj = elastic_projection(geom);
        const Eigen::Vector3d rigid = proj.w_r.transpose() * d; // (mean_x, mean_y, omega12)
        const Eigen::Vector3d strain = proj.w_c.transpose() * d;
        field.mean = rigid.head<2>();
        const double w12 = rigid[2];
        field.gradient(0, 0) = strain[0];
        field.gradient(1, 1) = strain[1];
        field.gradient(0, 1) = strain[2] + w12;
        field.gradient(1, 0) = strain[2] - w12;
        field.voigt_strain = strain;
    } else {
        const VemProjection proj = poisson_projection(geom);
        const double mean = (proj.w_r.transpose() * d)(0, 0);
        const Eigen::Vector2d grad = proj.w_c.transpose() * d;
        field.mean = Eigen::Vector2d(mean, 0.0);
        field.gradient(0, 0) = grad[0];
        field.gradient(0, 1) = grad[1];
        field.voigt_strain.head<2>() = grad;
    }
    return field;
}

struct ElementAccumulator {
    double numerator = 0.0;
    double denominator = 0.0;
};

template <typename Num, typename Den>
ElementAccumulator accumulate(const ElementGeometry& geom, int degree, Num&& num, Den&& den) {
    ElementAccumulator acc;
    for (const Triangle& tri : fan_triangulate(geom.vertices)) {
        acc.numerator += integrate(tri, degree, num);
        acc.denominator += integrate(tri, degree, den);
    }
    return acc;
}

} // namespace

double l2_error(const Mesh& mesh, const Eigen::VectorXd& solution, const ExactSolution& exact,
                Method method, int quadrature_degree) {
    const int nc = exact.n_components;
    if (solution.size() != static_cast<Eigen::Index>(mesh.nodes.size()) * nc)
        throw DimensionError("solution length does not match the mesh dof count");

    double num = 0.0, den = 0.0;
    for (const Polygon& e : mesh.elements) {
        const ElementGeometry geom = element_geometry(e, mesh.nodes);
        const Eigen::VectorXd d = element_values(e, solution, nc);

        std::function<Eigen::Vector2d(const Point2&)> discrete;
        if (method == Method::Fem) {
            if (e.size() != 3) throw Unsupported("FEM norms require a triangular mesh");
            const std::array<Point2, 3> tri{geom.vertices[0], geom.vertices[1], geom.vertices[2]};
            discrete = [tri, d, nc](const Point2& p) {
                const std::array<double, 3> l = Tri3ShapeFunctions::barycentric(tri, p);
                Eigen::Vector2d u = Eigen::Vector2d::Zero();
                for (int i = 0; i < 3; ++i)
                    for (int c = 0; c < nc; ++c) u[c] += l[i] * d[i * nc + c];
                return u;
            };
        } else {
            const ProjectedField field = projected_field(geom, d, nc);
            discrete = [field](const Point2& p) { return field.displacement(p); };
        }

        auto exact_vec = [&](const Point2& p) -> Eigen::Vector2d {
            if (nc == 2) return exact.displacement(p);
            return {exact.value(p), 0.0};
        };
        const ElementAccumulator acc = accumulate(
            geom, quadrature_degree,
            [&](const Point2& p) { return (exact_vec(p) - discrete(p)).squaredNorm(); },
            [&](const Point2& p) { return exact_vec(p).squaredNorm(); });
        num += acc.numerator;
        den += acc.denominator;
    }
    if (den <= 0.0) throw NormUndefined("exact solution has zero L2 norm");
    return std::sqrt(num / den);
}

double h1_error(const Mesh& mesh, const Eigen::VectorXd& solution, const ExactSolution& exact,
                const ConstitutiveMatrix* d_matrix, Method method, int quadrature_degree) {
    const int nc = exact.n_components;
    if (solution.size() != static_cast<Eigen::Index>(mesh.nodes.size()) * nc)
        throw DimensionError("solution length does not match the mesh dof count");
    if (nc == 2 && d_matrix == nullptr)
        throw DimensionError("vector problems need a constitutive matrix for the energy norm");

    double num = 0.0, den = 0.0;
    for (const Polygon& e : mesh.elements) {
        const ElementGeometry geom = element_geometry(e, mesh.nodes);
        if (method == Method::Fem && e.size() != 3)
            throw Unsupported("FEM norms require a triangular mesh");
        const Eigen::VectorXd d = element_values(e, solution, nc);
        // The discrete strain is constant per element for both methods; on
        // triangles the projected strain equals the shape-function strain.
        const Eigen::VectorXd strain_h = project_strain(geom, d);

        ElementAccumulator acc;
        if (nc == 2) {
            const Eigen::Matrix3d dd = d_matrix->d;
            const Eigen::Vector3d sh = strain_h;
            acc = accumulate(
                geom, quadrature_degree,
                [&](const Point2& p) {
                    const Eigen::Vector3d diff = exact.strain(p) - sh;
                    return diff.dot(dd * diff);
                },
                [&](const Point2& p) {
                    const Eigen::Vector3d s = exact.strain(p);
                    return s.dot(dd * s);
                });
        } else {
            const Eigen::Vector2d gh = strain_h;
            acc = accumulate(
                geom, quadrature_degree,
                [&](const Point2& p) { return (exact.gradient(p) - gh).squaredNorm(); },
                [&](const Point2& p) { return exact.gradient(p).squaredNorm(); });
        }
        num += acc.numerator;
        den += acc.denominator;
    }
    if (den <= 0.0) throw NormUndefined("exact solution has zero H1 seminorm");
    return std::sqrt(num / den);
}

ErrorReport error_report(const Mesh& mesh, const Eigen::VectorXd& solution,
                         const ExactSolution& exact, const ConstitutiveMatrix* d_matrix,
                         Method method, int quadrature_degree) {
    ErrorReport report;
    report.l2_relative = l2_error(mesh, solution, exact, method, quadrature_degree);
    report.h1_relative = h1_error(mesh, solution, exact, d_matrix, method, quadrature_degree);
    report.dof_count = static_cast<int>(mesh.nodes.size()) * exact.n_components;
    report.h_max = mesh_h_max(mesh);
    return report;
}

} // namespace polyvem
