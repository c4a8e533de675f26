#pragma once

#include <Eigen/Dense>

#include "polyvem/geometry.hpp"
#include "polyvem/model.hpp"

namespace polyvem {

// Nodal boundary averages of the virtual basis functions. Row a of q holds
// (q_1a, q_2a), the trapezoidal-rule value of the scaled boundary integral of
// basis function a against the outward normal; phi_bar is the node average of
// any basis function, 1/N.
struct EdgeAverages {
    Eigen::MatrixXd q; // N x 2
    double phi_bar = 0.0;
};

EdgeAverages edge_averages(const ElementGeometry& elem);

// Discretized projection operators. For elasticity the blocks are 2N x 3
// (rigid-body and constant-strain bases); for the scalar problem they reduce
// to N x 1 and N x 2. p_p = h_r * w_r' + h_c * w_c' extracts the linear part
// of an element field and is a projector.
struct VemProjection {
    Eigen::MatrixXd h_r, w_r, h_c, w_c;
    Eigen::MatrixXd p_p;

    Eigen::MatrixXd p_r() const { return h_r * w_r.transpose(); }
    Eigen::MatrixXd p_c() const { return h_c * w_c.transpose(); }
};

VemProjection elastic_projection(const ElementGeometry& elem);
VemProjection poisson_projection(const ElementGeometry& elem);

// Element stiffness split into its consistency part (exact on linear fields)
// and stability part (rank completion that vanishes on linear fields).
struct ElementStiffness {
    Eigen::MatrixXd consistency;
    Eigen::MatrixXd stability;

    Eigen::MatrixXd k() const { return consistency + stability; }
};

// K_E = |E| W_C D W_C' + (I - P_P)' S_E (I - P_P) with S_E = alpha_E I and
// alpha_E = gamma |E| trace(D) / trace(H_C' H_C).
ElementStiffness elastic_stiffness(const ElementGeometry& elem, const ConstitutiveMatrix& d_matrix,
                                   double gamma = 1.0);

// Scalar counterpart with S_E the identity.
ElementStiffness poisson_stiffness(const ElementGeometry& elem);

// Cell average of the body force lumped through the node-averaged basis: each
// node receives |E| b_hat / N per component.
Eigen::VectorXd body_force_vector(const ElementGeometry& elem, const BodyForce& body_force);
Eigen::VectorXd body_force_vector(const ElementGeometry& elem, const ScalarField& source);

// Edge-average traction lumped to the edge endpoints: each endpoint receives
// |e| f_hat / 2 per component.
Eigen::Vector4d traction_force_vector(const Point2& a, const Point2& b, const VectorField& traction);
Eigen::Vector2d traction_force_vector(const Point2& a, const Point2& b, const ScalarField& flux);

// Constant projected strain of an element field: Voigt 3-vector for nodal
// vectors of length 2N, gradient 2-vector for length N.
Eigen::VectorXd project_strain(const ElementGeometry& elem, const Eigen::VectorXd& nodal_values);

} // namespace polyvem
