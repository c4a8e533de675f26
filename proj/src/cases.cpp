#include "polyvem/cases.hpp"

#include <cmath>

#include "polyvem/fem.hpp"
#include "polyvem/vem.hpp"

namespace polyvem {

Eigen::Vector2d beam_exact_displacement(double x, double y, double p, double young, double poisson,
                                        double length_l, double depth_d) {
    const double e_bar = young / (1.0 - poisson * poisson);
    const double nu_bar = poisson / (1.0 - poisson);
    const double inertia = depth_d * depth_d * depth_d / 12.0;
    const double c = p / (6.0 * e_bar * inertia);
    const double ux = -c * y *
                      ((6.0 * length_l - 3.0 * x) * x + (2.0 + nu_bar) * y * y -
                       1.5 * depth_d * depth_d * (1.0 + nu_bar));
    const double uy = c * (3.0 * nu_bar * y * y * (length_l - x) + (3.0 * length_l - x) * x * x);
    return {ux, uy};
}

Eigen::Vector3d beam_exact_strain(double x, double y, double p, double young, double poisson,
                                  double length_l, double depth_d) {
    const double e_bar = young / (1.0 - poisson * poisson);
    const double nu_bar = poisson / (1.0 - poisson);
    const double inertia = depth_d * depth_d * depth_d / 12.0;
    const double eps11 = -p * y * (length_l - x) / (e_bar * inertia);
    const double eps22 = nu_bar * p * y * (length_l - x) / (e_bar * inertia);
    const double eps12 =
        p * (1.0 + nu_bar) * (depth_d * depth_d / 4.0 - y * y) / (2.0 * e_bar * inertia);
    return {eps11, eps22, eps12};
}

BenchmarkCase cantilever_beam_case(double p, double young, double poisson, double length_l,
                                   double depth_d) {
    BenchmarkCase c;
    c.name = "beam";
    c.n_components = 2;
    const double half = depth_d / 2.0;
    c.region = Region({{0.0, -half}, {length_l, -half}, {length_l, half}, {0.0, half}});
    c.material = Material{young, poisson, PlaneState::PlaneStrain};

    auto ux = [=](const Point2& q) {
        return beam_exact_displacement(q.x, q.y, p, young, poisson, length_l, depth_d).x();
    };
    auto uy = [=](const Point2& q) {
        return beam_exact_displacement(q.x, q.y, p, young, poisson, length_l, depth_d).y();
    };
    // Clamped edge carries the exact displacements; the opposite edge the
    // parabolic end shear.
    c.constraints.push_back(Constraint::essential_segment(
        {0.0, -half}, {0.0, half}, ConstraintDirection::Horizontal, ScalarField(ux)));
    c.constraints.push_back(Constraint::essential_segment(
        {0.0, -half}, {0.0, half}, ConstraintDirection::Vertical, ScalarField(uy)));
    const double inertia = depth_d * depth_d * depth_d / 12.0;
    auto shear = [=](const Point2& q) {
        return p * (depth_d * depth_d / 4.0 - q.y * q.y) / (2.0 * inertia);
    };
    c.constraints.push_back(Constraint::natural_segment(
        {length_l, -half}, {length_l, half}, ConstraintDirection::Vertical, ScalarField(shear)));

    ExactSolution exact;
    exact.n_components = 2;
    exact.displacement = [=](const Point2& q) {
        return beam_exact_displacement(q.x, q.y, p, young, poisson, length_l, depth_d);
    };
    exact.strain = [=](const Point2& q) {
        return beam_exact_strain(q.x, q.y, p, young, poisson, length_l, depth_d);
    };
    c.exact = exact;
    return c;
}

BenchmarkCase poisson_manufactured() {
    BenchmarkCase c;
    c.name = "poisson";
    c.n_components = 1;
    c.region = Region({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
    c.scalar_source = [](const Point2& q) {
        return 32.0 * q.y * (1.0 - q.y) + 32.0 * q.x * (1.0 - q.x);
    };
    const std::vector<Point2> corners{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    for (int i = 0; i < 4; ++i)
        c.constraints.push_back(Constraint::essential_segment(
            corners[i], corners[(i + 1) % 4], ConstraintDirection::Both, 0.0));

    ExactSolution exact;
    exact.n_components = 1;
    exact.value = [](const Point2& q) {
        return 16.0 * q.x * q.y * (1.0 - q.x) * (1.0 - q.y);
    };
    exact.gradient = [](const Point2& q) {
        return Eigen::Vector2d{16.0 * (1.0 - 2.0 * q.x) * q.y * (1.0 - q.y),
                               16.0 * q.x * (1.0 - q.x) * (1.0 - 2.0 * q.y)};
    };
    c.exact = exact;
    return c;
}

BenchmarkCase linear_patch_case(const Eigen::Vector2d& offset, const Eigen::Matrix2d& gradient,
                                Material material) {
    BenchmarkCase c;
    c.name = "patch";
    c.n_components = 2;
    c.region = Region({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
    c.material = material;

    auto field = [offset, gradient](const Point2& q) -> Eigen::Vector2d {
        return offset + gradient * Eigen::Vector2d(q.x, q.y);
    };
    const std::vector<Point2> corners{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    for (int i = 0; i < 4; ++i) {
        c.constraints.push_back(Constraint::essential_segment(
            corners[i], corners[(i + 1) % 4], ConstraintDirection::Horizontal,
            ScalarField([field](const Point2& q) { return field(q).x(); })));
        c.constraints.push_back(Constraint::essential_segment(
            corners[i], corners[(i + 1) % 4], ConstraintDirection::Vertical,
            ScalarField([field](const Point2& q) { return field(q).y(); })));
    }

    ExactSolution exact;
    exact.n_components = 2;
    exact.displacement = field;
    const Eigen::Matrix2d sym = 0.5 * (gradient + gradient.transpose());
    exact.strain = [sym](const Point2&) {
        return Eigen::Vector3d{sym(0, 0), sym(1, 1), sym(0, 1)};
    };
    c.exact = exact;
    return c;
}

RunResult run_case(const BenchmarkCase& problem, const Mesh& mesh, Method method, double gamma,
                   SolverKind solver) {
    return run_case(problem, mesh, method, {}, gamma, solver);
}

RunResult run_case(const BenchmarkCase& problem, const Mesh& mesh, Method method,
                   const std::vector<std::pair<int, double>>& extra_point_loads, double gamma,
                   SolverKind solver) {
    const int nc = problem.n_components;
    const DofMap dof_map(nc, static_cast<int>(mesh.nodes.size()));

    ConstitutiveMatrix d;
    if (nc == 2) {
        if (!problem.material) throw Error("vector case without a material");
        d = material_matrix(*problem.material);
    }

    if (method == Method::Fem) {
        if (nc != 2) throw Unsupported("FEM runs cover the elasticity problem only");
        for (const Polygon& e : mesh.elements)
            if (e.size() != 3) throw Unsupported("FEM runs require a triangular mesh");
    }

    StiffnessSupplier stiffness = [&](int idx) -> Eigen::MatrixXd {
        const ElementGeometry geom = element_geometry(mesh.elements[idx], mesh.nodes);
        if (method == Method::Fem) {
            const std::array<Point2, 3> tri{geom.vertices[0], geom.vertices[1], geom.vertices[2]};
            return t3_stiffness(tri, d);
        }
        if (nc == 2) return elastic_stiffness(geom, d, gamma).k();
        return poisson_stiffness(geom).k();
    };
    ForceSupplier force = [&](int idx) -> Eigen::VectorXd {
        const ElementGeometry geom = element_geometry(mesh.elements[idx], mesh.nodes);
        if (method == Method::Fem) {
            const std::array<Point2, 3> tri{geom.vertices[0], geom.vertices[1], geom.vertices[2]};
            return t3_body_force(tri, problem.body_force);
        }
        if (nc == 2) return body_force_vector(geom, problem.body_force);
        return body_force_vector(geom, problem.scalar_source);
    };

    GlobalSystem system = assemble(mesh, stiffness, force, dof_map);

    const ResolvedConstraints resolved = resolve_constraints(mesh, problem.constraints, dof_map);
    for (const auto& ne : resolved.natural) {
        const Point2 a = mesh.nodes[ne.edge.first];
        const Point2 b = mesh.nodes[ne.edge.second];
        if (nc == 2) {
            const Eigen::Vector4d fe = method == Method::Fem
                                           ? Eigen::Vector4d(t3_traction_force(a, b, ne.traction))
                                           : traction_force_vector(a, b, ne.traction);
            system.f[dof_map.dof(ne.edge.first, 0)] += fe[0];
            system.f[dof_map.dof(ne.edge.first, 1)] += fe[1];
            system.f[dof_map.dof(ne.edge.second, 0)] += fe[2];
            system.f[dof_map.dof(ne.edge.second, 1)] += fe[3];
        } else {
            const VectorField traction = ne.traction;
            const ScalarField flux = [traction](const Point2& q) { return traction(q).x(); };
            const Eigen::Vector2d fe = traction_force_vector(a, b, flux);
            system.f[dof_map.dof(ne.edge.first, 0)] += fe[0];
            system.f[dof_map.dof(ne.edge.second, 0)] += fe[1];
        }
    }
    for (const auto& [dof, value] : resolved.point_loads) system.f[dof] += value;
    for (const auto& [dof, value] : extra_point_loads) system.f[dof] += value;

    const ReducedSystem reduced = impose_essential(system, resolved.essential);

    RunResult result;
    result.solution = solve(reduced, solver);
    if (problem.exact) {
        result.report = error_report(mesh, result.solution, *problem.exact,
                                     nc == 2 ? &d : nullptr, method);
    }
    return result;
}

} // namespace polyvem
