#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "polarmon/graphkit/graph.hpp"
#include "polarmon/stance/stance.hpp"

namespace polarmon::polarization {

enum class SolverMethod { DirectSolve, FixedPoint };

std::string_view to_string(SolverMethod m);

struct SolverInfo {
    SolverMethod method = SolverMethod::DirectSolve;
    int iterations = 0;
    double residual = 0.0;  // ||(I + L) z - s||_inf
};

struct Equilibrium {
    std::vector<double> z;
    SolverInfo solver;
};

struct SolverOptions {
    SolverMethod method = SolverMethod::DirectSolve;
    double tol = 1e-10;
    // 0 means the default cap of 10 * n + 1000 fixed-point sweeps.
    int max_iter = 0;
};

/// Friedkin-Johnsen equilibrium: the solution of (I + L) z = s for the
/// combinatorial Laplacian L of `g`, all resistances equal to one.
///
/// DirectSolve factors I + L (sparse Cholesky) and refines until the residual
/// is within `tol`. FixedPoint iterates z_i <- (s_i + sum_{j~i} z_j) / (1 + deg_i)
/// from z = s and throws NonConvergence if the cap is reached.
Equilibrium fj_equilibrium(const graphkit::InteractionGraph& g, std::span<const double> s,
                           const SolverOptions& options = {});

/// Mean squared equilibrium opinion, ||z||^2 / n. Throws InvalidArgument on
/// an empty vector.
double polarization_index(std::span<const double> z);

struct PolarizationResult {
    double pi = 0.0;
    std::vector<double> z;
    SolverInfo solver;
    std::size_t nodes = 0;  // nodes that entered the index
    std::size_t edges = 0;
};

struct PiOptions {
    SolverOptions solver;
    // Degree-0 nodes keep z = s; when false they are left out of the index.
    bool include_isolated = true;
};

PolarizationResult compute_pi(const graphkit::InteractionGraph& g, const stance::StanceMap& stances,
                              const PiOptions& options = {});
PolarizationResult compute_pi(const graphkit::InteractionGraph& g, std::span<const double> s,
                              const PiOptions& options = {});

}  // namespace polarmon::polarization
