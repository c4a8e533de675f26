#pragma once

#include <Eigen/Dense>
#include <array>

#include "polyvem/geometry.hpp"
#include "polyvem/model.hpp"

namespace polyvem {

// Linear shape functions of the three-node triangle in barycentric form.
struct Tri3ShapeFunctions {
    // Values at a barycentric point (l1, l2, l3).
    static std::array<double, 3> values(double l1, double l2, double l3) { return {l1, l2, l3}; }

    // Constant physical-space gradients; requires positive triangle area.
    static std::array<Point2, 3> gradients(const std::array<Point2, 3>& nodes);

    // Barycentric coordinates of a physical point.
    static std::array<double, 3> barycentric(const std::array<Point2, 3>& nodes, const Point2& p);
};

// Constant-strain triangle stiffness K = A B' D B in the tensorial-shear
// Voigt convention shared with the constitutive matrix.
Eigen::Matrix<double, 6, 6> t3_stiffness(const std::array<Point2, 3>& nodes,
                                         const ConstitutiveMatrix& d_matrix);

// Consistent body force integral with a 3-point degree-2 rule.
Eigen::Matrix<double, 6, 1> t3_body_force(const std::array<Point2, 3>& nodes,
                                          const BodyForce& body_force);

// Edge traction integrated against the linear edge shape functions with
// 2-point Gauss.
Eigen::Matrix<double, 4, 1> t3_traction_force(const Point2& a, const Point2& b,
                                              const VectorField& traction);

// Scalar analogues used when cross-checking the Poisson discretization.
Eigen::Matrix3d t3_laplacian_stiffness(const std::array<Point2, 3>& nodes);
Eigen::Vector3d t3_source_force(const std::array<Point2, 3>& nodes, const ScalarField& source);
Eigen::Vector2d t3_flux_force(const Point2& a, const Point2& b, const ScalarField& flux);

} // namespace polyvem
