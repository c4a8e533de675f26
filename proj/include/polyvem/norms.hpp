#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>

#include "polyvem/mesh.hpp"
#include "polyvem/model.hpp"

namespace polyvem {

enum class Method { Vem, Fem };

// Closed-form reference solution. Vector problems provide displacement and
// Voigt strain; scalar problems provide value and gradient.
struct ExactSolution {
    int n_components = 2;
    std::function<Eigen::Vector2d(const Point2&)> displacement;
    std::function<Eigen::Vector3d(const Point2&)> strain;
    std::function<double(const Point2&)> value;
    std::function<Eigen::Vector2d(const Point2&)> gradient;
};

struct ErrorReport {
    double l2_relative = 0.0;
    double h1_relative = 0.0;
    int dof_count = 0;
    double h_max = 0.0;
};

// Relative L2-norm of the solution error. The discrete field is the projected
// linear field per element for the VEM and the shape-function interpolant for
// the FEM; integration runs over the fan triangulation with a Gauss rule of
// the given degree.
double l2_error(const Mesh& mesh, const Eigen::VectorXd& solution, const ExactSolution& exact,
                Method method, int quadrature_degree = 4);

// Relative H1-seminorm of the error in the energy weighting d_matrix (the
// 2x2 identity is used for scalar problems, where d_matrix is ignored).
double h1_error(const Mesh& mesh, const Eigen::VectorXd& solution, const ExactSolution& exact,
                const ConstitutiveMatrix* d_matrix, Method method, int quadrature_degree = 4);

ErrorReport error_report(const Mesh& mesh, const Eigen::VectorXd& solution,
                         const ExactSolution& exact, const ConstitutiveMatrix* d_matrix,
                         Method method, int quadrature_degree = 4);

} // namespace polyvem
