#include "polyvem/assembly.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>

#include "polyvem/errors.hpp"

namespace polyvem {

std::vector<int> DofMap::element_dofs(const Polygon& element) const {
    std::vector<int> dofs;
    dofs.reserve(element.node_indices.size() * n_components);
    for (int node : element.node_indices)
        for (int c = 0; c < n_components; ++c) dofs.push_back(dof(node, c));
    return dofs;
}

GlobalSystem assemble(const Mesh& mesh, const StiffnessSupplier& stiffness,
                      const ForceSupplier& force, const DofMap& dof_map) {
    const int total = dof_map.total_dofs();
    GlobalSystem system;
    system.f = Eigen::VectorXd::Zero(total);

    std::vector<Eigen::Triplet<double>> triplets;
    for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
        Eigen::MatrixXd ke;
        Eigen::VectorXd fe;
        try {
            ke = stiffness(static_cast<int>(e));
            fe = force(static_cast<int>(e));
        } catch (const std::exception& ex) {
            throw Error("element " + std::to_string(e) + ": " + ex.what());
        }
        const std::vector<int> dofs = dof_map.element_dofs(mesh.elements[e]);
        const int m = static_cast<int>(dofs.size());
        if (ke.rows() != m || ke.cols() != m || fe.size() != m)
            throw DimensionError("element " + std::to_string(e) +
                                 ": supplier size does not match element dof count");
        for (int r = 0; r < m; ++r) {
            system.f[dofs[r]] += fe[r];
            for (int c = 0; c < m; ++c) triplets.emplace_back(dofs[r], dofs[c], ke(r, c));
        }
    }
    system.k.resize(total, total);
    system.k.setFromTriplets(triplets.begin(), triplets.end());
    return system;
}

Eigen::VectorXd ReducedSystem::recover(const Eigen::VectorXd& reduced_solution) const {
    if (reduced_solution.size() != static_cast<Eigen::Index>(retained.size()))
        throw DimensionError("reduced solution length does not match the retained dof count");
    Eigen::VectorXd full = Eigen::VectorXd::Zero(full_size);
    for (std::size_t i = 0; i < retained.size(); ++i) full[retained[i]] = reduced_solution[i];
    for (const auto& [dof, value] : prescribed) full[dof] = value;
    return full;
}

ReducedSystem impose_essential(const GlobalSystem& system,
                               const std::vector<std::pair<int, double>>& essential) {
    const int total = static_cast<int>(system.f.size());

    std::vector<std::pair<int, double>> sorted = essential;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<int, double>> prescribed;
    for (const auto& [dof, value] : sorted) {
        if (dof < 0 || dof >= total) throw DimensionError("essential dof out of range");
        if (!prescribed.empty() && prescribed.back().first == dof) {
            const double prev = prescribed.back().second;
            const double scale = std::max({1.0, std::abs(prev), std::abs(value)});
            if (std::abs(prev - value) > 1e-12 * scale)
                throw ConstraintConflict("dof " + std::to_string(dof) +
                                         " prescribed two different values");
            continue;
        }
        prescribed.emplace_back(dof, value);
    }

    std::vector<int> reduced_index(total, -1);
    ReducedSystem out;
    out.full_size = total;
    out.prescribed = prescribed;
    std::vector<char> constrained(total, 0);
    for (const auto& [dof, value] : prescribed) constrained[dof] = 1;
    for (int i = 0; i < total; ++i) {
        if (!constrained[i]) {
            reduced_index[i] = static_cast<int>(out.retained.size());
            out.retained.push_back(i);
        }
    }

    const int nred = static_cast<int>(out.retained.size());
    out.f = Eigen::VectorXd::Zero(nred);
    for (int i = 0; i < nred; ++i) out.f[i] = system.f[out.retained[i]];

    std::vector<double> prescribed_value(total, 0.0);
    for (const auto& [dof, value] : prescribed) prescribed_value[dof] = value;

    std::vector<Eigen::Triplet<double>> triplets;
    for (int col = 0; col < system.k.outerSize(); ++col) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(system.k, col); it; ++it) {
            const int r = static_cast<int>(it.row());
            const int c = static_cast<int>(it.col());
            if (constrained[c]) {
                // Move the known column into the right-hand side.
                if (!constrained[r]) out.f[reduced_index[r]] -= it.value() * prescribed_value[c];
            } else if (!constrained[r]) {
                triplets.emplace_back(reduced_index[r], reduced_index[c], it.value());
            }
        }
    }
    out.k.resize(nred, nred);
    out.k.setFromTriplets(triplets.begin(), triplets.end());
    return out;
}

namespace {

// Counts near-zero pivots of the factorization as a null-space estimate.
int tiny_pivot_count(const Eigen::VectorXd& d) {
    const double dmax = d.cwiseAbs().maxCoeff();
    if (dmax == 0.0) return static_cast<int>(d.size());
    int count = 0;
    for (Eigen::Index i = 0; i < d.size(); ++i)
        if (std::abs(d[i]) <= 1e-12 * dmax) ++count;
    return count;
}

} // namespace

Eigen::VectorXd solve(const Eigen::SparseMatrix<double>& k, const Eigen::VectorXd& f,
                      SolverKind kind) {
    const Eigen::Index n = f.size();
    if (k.rows() != n || k.cols() != n) throw DimensionError("system matrix and vector disagree");
    if (n == 0) return Eigen::VectorXd();

    if (kind == SolverKind::Auto)
        kind = n > 200000 ? SolverKind::ConjugateGradient : SolverKind::Direct;

    Eigen::VectorXd u;
    if (kind == SolverKind::Direct) {
        Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(k);
        if (ldlt.info() != Eigen::Success)
            throw SolveFailure("direct factorization failed", tiny_pivot_count(ldlt.vectorD()));
        const int null_dim = tiny_pivot_count(ldlt.vectorD());
        if (null_dim > 0)
            throw SolveFailure("system matrix is singular", null_dim);
        u = ldlt.solve(f);
    } else {
        Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg(k);
        cg.setTolerance(1e-10);
        u = cg.solve(f);
        if (cg.info() != Eigen::Success)
            throw SolveFailure("conjugate gradient did not converge", 0);
    }

    const double fn = f.norm();
    const double residual = (k * u - f).norm();
    if (!u.allFinite() || residual > 1e-9 * std::max(fn, 1e-300))
        throw SolveFailure("solution residual exceeds tolerance", 0);
    return u;
}

} // namespace polyvem
