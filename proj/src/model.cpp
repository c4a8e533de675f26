#include "polyvem/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace polyvem {

ConstitutiveMatrix material_matrix(const Material& material) {
    const double e = material.young_modulus;
    const double nu = material.poisson_ratio;
    if (!(e > 0.0)) throw ConstitutiveSingularity("Young's modulus must be positive");
    if (!(nu > -1.0) || !(nu < 0.5))
        throw ConstitutiveSingularity("Poisson's ratio must lie in (-1, 0.5)");

    ConstitutiveMatrix out;
    Eigen::Matrix3d& d = out.d;
    d.setZero();
    if (material.plane_state == PlaneState::PlaneStrain) {
        if (std::abs(1.0 - 2.0 * nu) < 1e-12)
            throw ConstitutiveSingularity("plane strain is singular as Poisson's ratio approaches 0.5");
        const double factor = e / ((1.0 + nu) * (1.0 - 2.0 * nu));
        d(0, 0) = factor * (1.0 - nu);
        d(1, 1) = factor * (1.0 - nu);
        d(0, 1) = d(1, 0) = factor * nu;
        d(2, 2) = factor * 2.0 * (1.0 - 2.0 * nu);
    } else {
        const double factor = e / (1.0 - nu * nu);
        d(0, 0) = factor;
        d(1, 1) = factor;
        d(0, 1) = d(1, 0) = factor * nu;
        d(2, 2) = factor * 2.0 * (1.0 - nu);
    }
    return out;
}

namespace {

std::string describe(const Constraint& c) {
    std::ostringstream os;
    os << (c.kind == ConstraintKind::Essential ? "essential" : "natural");
    if (c.point)
        os << " point (" << c.point->x << ", " << c.point->y << ")";
    else if (c.segment)
        os << " segment (" << c.segment->first.x << ", " << c.segment->first.y << ")-("
           << c.segment->second.x << ", " << c.segment->second.y << ")";
    else
        os << " constraint without a target";
    return os.str();
}

double point_segment_distance(const Point2& p, const Point2& a, const Point2& b) {
    const Point2 d = b - a;
    const double len2 = d.squared_norm();
    if (len2 == 0.0) return p.distance(a);
    const double t = std::clamp((p - a).dot(d) / len2, 0.0, 1.0);
    return p.distance(a + d * t);
}

std::vector<int> components_of(ConstraintDirection dir, int n_components) {
    if (n_components == 1) return {0};
    switch (dir) {
        case ConstraintDirection::Horizontal: return {0};
        case ConstraintDirection::Vertical: return {1};
        case ConstraintDirection::Both: return {0, 1};
    }
    return {};
}

// Traction field restricted to the constrained components.
VectorField masked_traction(const Constraint& c, int n_components) {
    const std::vector<int> comps = components_of(c.direction, n_components);
    const ConstraintValue value = c.value;
    return [comps, value](const Point2& p) {
        Eigen::Vector2d t = Eigen::Vector2d::Zero();
        for (int comp : comps) t[comp] = value(p);
        return t;
    };
}

} // namespace

ResolvedConstraints resolve_constraints(const Mesh& mesh, const std::vector<Constraint>& constraints,
                                        const DofMap& dof_map, double tol) {
    if (tol < 0.0) tol = 1e-9 * mesh.bbox().diagonal();
    ResolvedConstraints out;

    const std::vector<int> bnodes = boundary_nodes(mesh);

    for (const Constraint& c : constraints) {
        const std::vector<int> comps = components_of(c.direction, dof_map.n_components);
        bool matched = false;

        if (c.point) {
            // Snap to the nearest boundary node within tolerance.
            int best = -1;
            double best_dist = tol;
            for (int node : bnodes) {
                const double dist = mesh.nodes[node].distance(*c.point);
                if (dist <= best_dist) {
                    best = node;
                    best_dist = dist;
                }
            }
            if (best >= 0) {
                matched = true;
                for (int comp : comps) {
                    const int dof = dof_map.dof(best, comp);
                    const double v = c.value(mesh.nodes[best]);
                    if (c.kind == ConstraintKind::Essential)
                        out.essential.emplace_back(dof, v);
                    else
                        out.point_loads.emplace_back(dof, v);
                }
            }
        } else if (c.segment) {
            const Point2 a = c.segment->first;
            const Point2 b = c.segment->second;
            if (a.distance(b) <= tol)
                throw UnmatchedConstraint("segment endpoints coincide: " + describe(c));
            if (c.kind == ConstraintKind::Essential) {
                for (int node : bnodes) {
                    if (point_segment_distance(mesh.nodes[node], a, b) > tol) continue;
                    matched = true;
                    for (int comp : comps)
                        out.essential.emplace_back(dof_map.dof(node, comp),
                                                   c.value(mesh.nodes[node]));
                }
            } else {
                for (const auto& [n0, n1] : mesh.boundary_segments) {
                    if (point_segment_distance(mesh.nodes[n0], a, b) > tol ||
                        point_segment_distance(mesh.nodes[n1], a, b) > tol)
                        continue;
                    matched = true;
                    out.natural.push_back({{n0, n1}, masked_traction(c, dof_map.n_components)});
                }
            }
        }

        if (!matched) throw UnmatchedConstraint("no boundary match for " + describe(c));
    }

    // Canonical order plus conflict detection makes resolution independent of
    // the constraint list order.
    std::sort(out.essential.begin(), out.essential.end());
    std::vector<std::pair<int, double>> merged;
    for (const auto& [dof, value] : out.essential) {
        if (!merged.empty() && merged.back().first == dof) {
            const double prev = merged.back().second;
            const double scale = std::max({1.0, std::abs(prev), std::abs(value)});
            if (std::abs(prev - value) > 1e-12 * scale)
                throw ConstraintConflict("dof " + std::to_string(dof) +
                                         " receives conflicting essential values");
            continue;
        }
        merged.emplace_back(dof, value);
    }
    out.essential = std::move(merged);
    std::stable_sort(out.natural.begin(), out.natural.end(),
                     [](const ResolvedConstraints::NaturalEdge& x,
                        const ResolvedConstraints::NaturalEdge& y) { return x.edge < y.edge; });
    std::stable_sort(out.point_loads.begin(), out.point_loads.end(),
                     [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}

} // namespace polyvem
