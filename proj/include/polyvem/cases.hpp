#pragma once

#include <optional>
#include <string>

#include "polyvem/assembly.hpp"
#include "polyvem/mesher.hpp"
#include "polyvem/model.hpp"
#include "polyvem/norms.hpp"

namespace polyvem {

// Self-contained problem definition: domain, material (vector problems),
// loading, boundary conditions and, when known, the closed-form solution.
struct BenchmarkCase {
    std::string name;
    int n_components = 2;
    Region region{std::vector<Point2>{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
    std::optional<Material> material;
    BodyForce body_force;
    ScalarField scalar_source;
    std::vector<Constraint> constraints;
    std::optional<ExactSolution> exact;
};

// Cantilever of length length_l and height depth_d, clamped at x = 0 with a
// parabolic shear load of resultant p at x = length_l, in plane strain. The
// clamped edge carries the closed-form displacements as essential values.
// Defaults follow the classical benchmark setup.
BenchmarkCase cantilever_beam_case(double p = -1000.0, double young = 1e7, double poisson = 0.3,
                                   double length_l = 8.0, double depth_d = 4.0);

Eigen::Vector2d beam_exact_displacement(double x, double y, double p, double young, double poisson,
                                        double length_l, double depth_d);
Eigen::Vector3d beam_exact_strain(double x, double y, double p, double young, double poisson,
                                  double length_l, double depth_d);

// Unit-square Poisson problem with source 32y(1-y) + 32x(1-x), homogeneous
// essential boundary data and solution 16xy(1-x)(1-y).
BenchmarkCase poisson_manufactured();

// Unit-square elasticity problem whose solution is the given linear field,
// imposed on the whole boundary.
BenchmarkCase linear_patch_case(const Eigen::Vector2d& offset, const Eigen::Matrix2d& gradient,
                                Material material);

struct RunResult {
    Eigen::VectorXd solution; // full nodal vector
    std::optional<ErrorReport> report;
};

// Full pipeline: dof numbering, element suppliers, assembly, natural loads,
// essential elimination, solve and (when the case has an exact solution) the
// error report. FEM runs require a triangular mesh.
RunResult run_case(const BenchmarkCase& problem, const Mesh& mesh, Method method,
                   double gamma = 1.0, SolverKind solver = SolverKind::Auto);

// Variant for meshes that carry their own resolved conditions (PolyMesher
// imports): concentrated loads are added on top of the case constraints.
RunResult run_case(const BenchmarkCase& problem, const Mesh& mesh, Method method,
                   const std::vector<std::pair<int, double>>& extra_point_loads, double gamma = 1.0,
                   SolverKind solver = SolverKind::Auto);

} // namespace polyvem
