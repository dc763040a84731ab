#include "polarmon/polarization/fj.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <cmath>
#include <string>

namespace polarmon::polarization {

std::string_view to_string(SolverMethod m) { return m == SolverMethod::DirectSolve ? "DirectSolve" : "FixedPoint"; }

namespace {

void check_inputs(const graphkit::InteractionGraph& g, std::span<const double> s) {
    if (s.size() != g.node_count()) throw InvalidArgument("opinion vector length does not match node count");
    for (double v : s)
        if (!(std::fabs(v) <= 1.0)) throw InvalidArgument("innate opinions must lie in [-1, 1]");
}

Equilibrium solve_fixed_point(const graphkit::InteractionGraph& g, std::span<const double> s,
                              const SolverOptions& opt) {
    const auto& k = simd::kernels();
    const std::size_t n = g.node_count();
    const int cap = opt.max_iter > 0 ? opt.max_iter : static_cast<int>(10 * n + 1000);
    std::vector<double> z(s.begin(), s.end());
    std::vector<double> next(n);
    double residual = 0.0;
    for (int it = 0; it <= cap; ++it) {
        residual = k.jacobi_sweep(g.csr(), s, z, next);
        if (residual <= opt.tol) return {std::move(z), {SolverMethod::FixedPoint, it, residual}};
        if (it == cap) break;
        z.swap(next);
    }
    throw NonConvergence("FJ fixed point did not reach tolerance in " + std::to_string(cap) + " sweeps (residual " +
                             format_double(residual) + ")",
                         cap, residual);
}

Equilibrium solve_direct(const graphkit::InteractionGraph& g, std::span<const double> s, const SolverOptions& opt) {
    const auto& k = simd::kernels();
    const std::size_t n = g.node_count();
    const auto ni = static_cast<Eigen::Index>(n);

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(n + 2 * g.edge_count());
    for (std::size_t i = 0; i < n; ++i) {
        const auto idx = static_cast<graphkit::NodeIndex>(i);
        triplets.emplace_back(idx, idx, 1.0 + g.degree(idx));
    }
    for (const auto& [a, b] : g.edges()) {
        triplets.emplace_back(a, b, -1.0);
        triplets.emplace_back(b, a, -1.0);
    }
    Eigen::SparseMatrix<double> m(ni, ni);
    m.setFromTriplets(triplets.begin(), triplets.end());

    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt;
    llt.compute(m);
    if (llt.info() != Eigen::Success) throw Error("Cholesky factorization of I + L failed");

    const Eigen::Map<const Eigen::VectorXd> rhs(s.data(), ni);
    std::vector<double> z(n);
    Eigen::Map<Eigen::VectorXd>(z.data(), ni) = llt.solve(rhs);

    // Residual from one Jacobi evaluation: r_i = (1 + deg_i) (next_i - z_i).
    std::vector<double> next(n), correction(n);
    double residual = k.jacobi_sweep(g.csr(), s, z, next);
    int refinements = 0;
    while (residual > opt.tol && refinements < 5) {
        for (std::size_t i = 0; i < n; ++i)
            correction[i] = (1.0 + g.degree(static_cast<graphkit::NodeIndex>(i))) * (next[i] - z[i]);
        const Eigen::Map<const Eigen::VectorXd> r(correction.data(), ni);
        const Eigen::VectorXd dz = llt.solve(r);
        k.axpy(1.0, std::span<const double>(dz.data(), n), z);
        residual = k.jacobi_sweep(g.csr(), s, z, next);
        ++refinements;
    }
    if (residual > opt.tol)
        throw NonConvergence("direct FJ solve residual above tolerance after refinement", refinements, residual);
    return {std::move(z), {SolverMethod::DirectSolve, 1 + refinements, residual}};
}

}  // namespace

Equilibrium fj_equilibrium(const graphkit::InteractionGraph& g, std::span<const double> s,
                           const SolverOptions& options) {
    check_inputs(g, s);
    if (g.node_count() == 0) return {{}, {options.method, 0, 0.0}};
    if (options.method == SolverMethod::FixedPoint) return solve_fixed_point(g, s, options);
    return solve_direct(g, s, options);
}

double polarization_index(std::span<const double> z) {
    if (z.empty()) throw InvalidArgument("polarization index is undefined on an empty graph");
    return simd::kernels().sum_squares(z) / static_cast<double>(z.size());
}

PolarizationResult compute_pi(const graphkit::InteractionGraph& g, std::span<const double> s,
                              const PiOptions& options) {
    Equilibrium eq = fj_equilibrium(g, s, options.solver);
    PolarizationResult out;
    out.solver = eq.solver;
    out.edges = g.edge_count();
    if (options.include_isolated) {
        out.pi = polarization_index(eq.z);
        out.nodes = eq.z.size();
    } else {
        std::vector<double> connected;
        for (std::size_t i = 0; i < eq.z.size(); ++i)
            if (g.degree(static_cast<graphkit::NodeIndex>(i)) > 0) connected.push_back(eq.z[i]);
        out.pi = polarization_index(connected);
        out.nodes = connected.size();
    }
    out.z = std::move(eq.z);
    return out;
}

PolarizationResult compute_pi(const graphkit::InteractionGraph& g, const stance::StanceMap& stances,
                              const PiOptions& options) {
    const std::vector<double> s = stance::opinion_vector(g, stances);
    return compute_pi(g, s, options);
}

}  // namespace polarmon::polarization
