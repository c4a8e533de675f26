#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "polyvem/assembly.hpp"
#include "polyvem/mesh.hpp"

namespace polyvem {

using ScalarField = std::function<double(const Point2&)>;
using VectorField = std::function<Eigen::Vector2d(const Point2&)>;

enum class PlaneState { PlaneStrain, PlaneStress };

struct Material {
    double young_modulus = 1.0;
    double poisson_ratio = 0.0;
    PlaneState plane_state = PlaneState::PlaneStrain;
};

// Voigt ordering [eps11, eps22, eps12] with tensorial shear: the third
// diagonal entry of d carries the energy factor of 2, so eps' * d * eps is
// twice the strain energy density. This differs from the engineering-shear
// convention.
struct ConstitutiveMatrix {
    Eigen::Matrix3d d = Eigen::Matrix3d::Identity();
};

ConstitutiveMatrix material_matrix(const Material& material);

// Body force per unit area; unset components are identically zero.
struct BodyForce {
    ScalarField fx;
    ScalarField fy;

    static BodyForce none() { return {}; }
    bool is_zero() const { return !fx && !fy; }
    Eigen::Vector2d operator()(const Point2& p) const {
        return {fx ? fx(p) : 0.0, fy ? fy(p) : 0.0};
    }
};

enum class ConstraintDirection { Horizontal, Vertical, Both };
enum class ConstraintKind { Essential, Natural };

// Prescribed value: a constant or a scalar function of position.
struct ConstraintValue {
    double constant = 0.0;
    ScalarField function;

    ConstraintValue() = default;
    ConstraintValue(double c) : constant(c) {}
    ConstraintValue(ScalarField f) : function(std::move(f)) {}
    double operator()(const Point2& p) const { return function ? function(p) : constant; }
};

// A single boundary condition on a point or a segment of the domain boundary.
// Essential constraints prescribe solution values; natural constraints
// prescribe tractions (fluxes) that load the force vector.
struct Constraint {
    std::optional<Point2> point;
    std::optional<std::pair<Point2, Point2>> segment;
    ConstraintDirection direction = ConstraintDirection::Both;
    ConstraintKind kind = ConstraintKind::Essential;
    ConstraintValue value;

    static Constraint essential_point(Point2 p, ConstraintDirection dir, ConstraintValue v) {
        Constraint c;
        c.point = p;
        c.direction = dir;
        c.kind = ConstraintKind::Essential;
        c.value = std::move(v);
        return c;
    }
    static Constraint essential_segment(Point2 a, Point2 b, ConstraintDirection dir,
                                        ConstraintValue v) {
        Constraint c;
        c.segment = {a, b};
        c.direction = dir;
        c.kind = ConstraintKind::Essential;
        c.value = std::move(v);
        return c;
    }
    static Constraint natural_point(Point2 p, ConstraintDirection dir, ConstraintValue v) {
        Constraint c;
        c.point = p;
        c.direction = dir;
        c.kind = ConstraintKind::Natural;
        c.value = std::move(v);
        return c;
    }
    static Constraint natural_segment(Point2 a, Point2 b, ConstraintDirection dir,
                                      ConstraintValue v) {
        Constraint c;
        c.segment = {a, b};
        c.direction = dir;
        c.kind = ConstraintKind::Natural;
        c.value = std::move(v);
        return c;
    }
};

struct ResolvedConstraints {
    // Prescribed (global dof, value) pairs, sorted by dof, duplicates merged.
    std::vector<std::pair<int, double>> essential;

    // Boundary edges covered by natural segment constraints with the traction
    // (or flux) evaluated per edge. An edge may appear once per matching
    // constraint; contributions add.
    struct NaturalEdge {
        std::pair<int, int> edge;
        VectorField traction; // second component unused for scalar problems
    };
    std::vector<NaturalEdge> natural;

    // Concentrated loads from natural point constraints, added to F directly.
    std::vector<std::pair<int, double>> point_loads;
};

// Matches constraint targets against the mesh boundary. Point targets snap to
// a node within tol, segment targets collect every node (essential) or
// boundary edge (natural) geometrically inside the segment. tol < 0 selects
// the default 1e-9 * bbox diagonal.
ResolvedConstraints resolve_constraints(const Mesh& mesh, const std::vector<Constraint>& constraints,
                                        const DofMap& dof_map, double tol = -1.0);

} // namespace polyvem
