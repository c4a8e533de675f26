#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <functional>
#include <utility>
#include <vector>

#include "polyvem/mesh.hpp"

namespace polyvem {

// Node-to-global-dof numbering: node n, component c -> n * n_components + c.
struct DofMap {
    int n_components = 2; // 2 for elasticity, 1 for scalar problems
    int n_nodes = 0;

    DofMap() = default;
    DofMap(int components, int nodes) : n_components(components), n_nodes(nodes) {}

    int total_dofs() const { return n_nodes * n_components; }
    int dof(int node, int component) const { return node * n_components + component; }

    // Local scatter indices of an element's dofs, node-major.
    std::vector<int> element_dofs(const Polygon& element) const;
};

struct GlobalSystem {
    Eigen::SparseMatrix<double> k;
    Eigen::VectorXd f;
};

using StiffnessSupplier = std::function<Eigen::MatrixXd(int element_index)>;
using ForceSupplier = std::function<Eigen::VectorXd(int element_index)>;

// Scatters per-element stiffness matrices and force vectors into the global
// system. Summation order is fixed by (element index, local row, local col),
// so the result is independent of any external iteration order.
GlobalSystem assemble(const Mesh& mesh, const StiffnessSupplier& stiffness,
                      const ForceSupplier& force, const DofMap& dof_map);

// Result of symmetric elimination of the essential dofs.
struct ReducedSystem {
    Eigen::SparseMatrix<double> k;
    Eigen::VectorXd f;
    std::vector<int> retained;                       // reduced index -> full dof
    std::vector<std::pair<int, double>> prescribed;  // sorted by dof

    int full_size = 0;

    // Reinserts prescribed values into a full-length vector.
    Eigen::VectorXd recover(const Eigen::VectorXd& reduced_solution) const;
};

ReducedSystem impose_essential(const GlobalSystem& system,
                               const std::vector<std::pair<int, double>>& essential);

enum class SolverKind { Auto, Direct, ConjugateGradient };

// Direct symmetric factorization by default; conjugate gradients (tolerance
// 1e-10) for large systems or on request. Throws SolveFailure with a
// null-space dimension estimate when the matrix is singular or the residual
// exceeds 1e-9 * |f|.
Eigen::VectorXd solve(const Eigen::SparseMatrix<double>& k, const Eigen::VectorXd& f,
                      SolverKind kind = SolverKind::Auto);

inline Eigen::VectorXd solve(const ReducedSystem& system, SolverKind kind = SolverKind::Auto) {
    return system.recover(solve(system.k, system.f, kind));
}

} // namespace polyvem
