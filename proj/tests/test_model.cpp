#include <doctest.h>

#include <Eigen/Cholesky>
#include <algorithm>
#include <random>

#include "polyvem/mesher.hpp"
#include "polyvem/model.hpp"
#include "test_support.hpp"

using namespace polyvem;

TEST_CASE("material matrix collapses to a diagonal for zero Poisson ratio") {
    const ConstitutiveMatrix stress = material_matrix({1.0, 0.0, PlaneState::PlaneStress});
    const ConstitutiveMatrix strain = material_matrix({1.0, 0.0, PlaneState::PlaneStrain});
    const Eigen::Vector3d expected{1.0, 1.0, 2.0};
    CHECK((stress.d.diagonal() - expected).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK((strain.d - stress.d).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(stress.d(0, 1) == 0.0);
}

TEST_CASE("material matrix matches direct substitution for plane strain") {
    const ConstitutiveMatrix d = material_matrix({1e7, 0.3, PlaneState::PlaneStrain});
    const double factor = 1e7 / 0.52;
    CHECK(d.d(0, 0) == doctest::Approx(factor * 0.7));
    CHECK(d.d(1, 1) == doctest::Approx(factor * 0.7));
    CHECK(d.d(0, 1) == doctest::Approx(factor * 0.3));
    CHECK(d.d(1, 0) == doctest::Approx(factor * 0.3));
    CHECK(d.d(2, 2) == doctest::Approx(factor * 0.8));
    CHECK(d.d(0, 2) == 0.0);
    CHECK(d.d(2, 1) == 0.0);
}

TEST_CASE("material matrix is symmetric positive definite over the admissible range") {
    for (double nu : {-0.9, -0.5, -0.1, 0.0, 0.25, 0.4, 0.49}) {
        for (PlaneState state : {PlaneState::PlaneStrain, PlaneState::PlaneStress}) {
            const ConstitutiveMatrix d = material_matrix({123.0, nu, state});
            CHECK((d.d - d.d.transpose()).cwiseAbs().maxCoeff() == 0.0);
            Eigen::LLT<Eigen::Matrix3d> llt(d.d);
            CHECK(llt.info() == Eigen::Success);
        }
    }
}

TEST_CASE("material matrix rejects inadmissible parameters") {
    CHECK_THROWS_AS(material_matrix({0.0, 0.3, PlaneState::PlaneStrain}), ConstitutiveSingularity);
    CHECK_THROWS_AS(material_matrix({-1.0, 0.3, PlaneState::PlaneStress}), ConstitutiveSingularity);
    CHECK_THROWS_AS(material_matrix({1.0, 0.5, PlaneState::PlaneStrain}), ConstitutiveSingularity);
    CHECK_THROWS_AS(material_matrix({1.0, 0.49999999999999, PlaneState::PlaneStrain}),
                    ConstitutiveSingularity);
    CHECK_THROWS_AS(material_matrix({1.0, -1.0, PlaneState::PlaneStress}), ConstitutiveSingularity);
    CHECK_THROWS_AS(material_matrix({1.0, 0.7, PlaneState::PlaneStress}), ConstitutiveSingularity);
}

namespace {

// 2x2 grid-cell mesh of the unit square.
Mesh square_mesh() {
    const Region region({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    return build_voronoi_mesh(region,
                              generate_seeds(region, SeedRule::constant().with_centered(), 2, 2));
}

} // namespace

TEST_CASE("essential segment constraint pins every node on the edge") {
    const Mesh mesh = square_mesh();
    const DofMap dofs(2, static_cast<int>(mesh.nodes.size()));
    const std::vector<Constraint> constraints{
        Constraint::essential_segment({0, 0}, {0, 1}, ConstraintDirection::Both, 0.0)};
    const ResolvedConstraints r = resolve_constraints(mesh, constraints, dofs);

    // Left edge of a 2x2 grid mesh carries 3 nodes, 2 dofs each.
    CHECK(r.essential.size() == 6);
    for (const auto& [dof, value] : r.essential) {
        CHECK(value == 0.0);
        CHECK(mesh.nodes[dof / 2].x == doctest::Approx(0.0));
    }
    CHECK(r.natural.empty());
    CHECK(r.point_loads.empty());
}

TEST_CASE("point constraint snaps to exactly one node") {
    const Mesh mesh = square_mesh();
    const DofMap dofs(2, static_cast<int>(mesh.nodes.size()));
    const ResolvedConstraints r = resolve_constraints(
        mesh, {Constraint::essential_point({1, 1}, ConstraintDirection::Vertical, 2.5)}, dofs);
    REQUIRE(r.essential.size() == 1);
    CHECK(r.essential[0].second == 2.5);
    CHECK(mesh.nodes[r.essential[0].first / 2].distance({1, 1}) <= 1e-12);
    CHECK(r.essential[0].first % 2 == 1);
}

TEST_CASE("natural segment collects the boundary edges inside it") {
    const Mesh mesh = square_mesh();
    const DofMap dofs(2, static_cast<int>(mesh.nodes.size()));
    const ResolvedConstraints r = resolve_constraints(
        mesh, {Constraint::natural_segment({0, 1}, {1, 1}, ConstraintDirection::Vertical, -1.0)},
        dofs);
    CHECK(r.natural.size() == 2); // the top side of a 2x2 mesh has 2 edges
    for (const auto& ne : r.natural) {
        CHECK(mesh.nodes[ne.edge.first].y == doctest::Approx(1.0));
        CHECK(mesh.nodes[ne.edge.second].y == doctest::Approx(1.0));
        const Eigen::Vector2d t = ne.traction({0.5, 1.0});
        CHECK(t.x() == 0.0);
        CHECK(t.y() == -1.0);
    }
}

TEST_CASE("natural point constraints become concentrated loads") {
    const Mesh mesh = square_mesh();
    const DofMap dofs(2, static_cast<int>(mesh.nodes.size()));
    const ResolvedConstraints r = resolve_constraints(
        mesh, {Constraint::natural_point({0.5, 1.0}, ConstraintDirection::Vertical, 0.5)}, dofs);
    REQUIRE(r.point_loads.size() == 1);
    CHECK(r.point_loads[0].second == 0.5);
}

TEST_CASE("unmatched targets are reported") {
    const Mesh mesh = square_mesh();
    const DofMap dofs(2, static_cast<int>(mesh.nodes.size()));
    CHECK_THROWS_AS(resolve_constraints(
                        mesh, {Constraint::essential_point({5, 5}, ConstraintDirection::Both, 0.0)},
                        dofs),
                    UnmatchedConstraint);
    CHECK_THROWS_AS(
        resolve_constraints(
            mesh, {Constraint::natural_segment({3, 0}, {3, 1}, ConstraintDirection::Both, 1.0)},
            dofs),
        UnmatchedConstraint);
}

TEST_CASE("conflicting essential values on one dof are an error") {
    const Mesh mesh = square_mesh();
    const DofMap dofs(2, static_cast<int>(mesh.nodes.size()));
    const std::vector<Constraint> conflicting{
        Constraint::essential_point({0, 0}, ConstraintDirection::Horizontal, 0.0),
        Constraint::essential_point({0, 0}, ConstraintDirection::Horizontal, 1.0)};
    CHECK_THROWS_AS(resolve_constraints(mesh, conflicting, dofs), ConstraintConflict);

    // Identical duplicates merge silently.
    const std::vector<Constraint> duplicate{
        Constraint::essential_point({0, 0}, ConstraintDirection::Horizontal, 1.0),
        Constraint::essential_point({0, 0}, ConstraintDirection::Horizontal, 1.0)};
    CHECK(resolve_constraints(mesh, duplicate, dofs).essential.size() == 1);
}

TEST_CASE("resolution is independent of the constraint order") {
    const Mesh mesh = square_mesh();
    const DofMap dofs(2, static_cast<int>(mesh.nodes.size()));
    std::vector<Constraint> constraints{
        Constraint::essential_segment({0, 0}, {0, 1}, ConstraintDirection::Both, 0.0),
        Constraint::essential_point({1, 0}, ConstraintDirection::Vertical, 0.25),
        Constraint::natural_segment({0, 1}, {1, 1}, ConstraintDirection::Vertical, -2.0)};
    const ResolvedConstraints base = resolve_constraints(mesh, constraints, dofs);

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 5; ++trial) {
        std::shuffle(constraints.begin(), constraints.end(), rng);
        const ResolvedConstraints r = resolve_constraints(mesh, constraints, dofs);
        REQUIRE(r.essential.size() == base.essential.size());
        for (std::size_t i = 0; i < r.essential.size(); ++i) {
            CHECK(r.essential[i].first == base.essential[i].first);
            CHECK(r.essential[i].second == base.essential[i].second);
        }
        REQUIRE(r.natural.size() == base.natural.size());
        for (std::size_t i = 0; i < r.natural.size(); ++i)
            CHECK(r.natural[i].edge == base.natural[i].edge);
    }
}

TEST_CASE("scalar problems use a single dof per node") {
    const Mesh mesh = square_mesh();
    const DofMap dofs(1, static_cast<int>(mesh.nodes.size()));
    const ResolvedConstraints r = resolve_constraints(
        mesh, {Constraint::essential_segment({0, 0}, {1, 0}, ConstraintDirection::Both, 3.0)}, dofs);
    CHECK(r.essential.size() == 3); // bottom edge nodes, one dof each
    for (const auto& [dof, value] : r.essential) {
        CHECK(value == 3.0);
        CHECK(mesh.nodes[dof].y == doctest::Approx(0.0));
    }
}
