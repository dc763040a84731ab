#include "polarmon/simd/kernels.hpp"

#include <cmath>

namespace polarmon::simd::generic {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double sum_squares(std::span<const double> a) {
    double acc = 0.0;
    for (double v : a) acc += v * v;
    return acc;
}

double max_abs(std::span<const double> a) {
    double m = 0.0;
    for (double v : a) m = std::fmax(m, std::fabs(v));
    return m;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::fmax(m, std::fabs(a[i] - b[i]));
    return m;
}

void scale(std::span<double> a, double factor) {
    for (double& v : a) v *= factor;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void adjacency_spmv(CsrView adj, double shift, std::span<const double> x, std::span<double> y) {
    const std::size_t n = adj.rows();
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::int32_t e = adj.row_ptr[i]; e < adj.row_ptr[i + 1]; ++e) acc += x[adj.col[e]];
        y[i] = shift * x[i] + acc;
    }
}

double jacobi_sweep(CsrView adj, std::span<const double> s, std::span<const double> z,
                    std::span<double> next) {
    const std::size_t n = adj.rows();
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::int32_t e = adj.row_ptr[i]; e < adj.row_ptr[i + 1]; ++e) acc += z[adj.col[e]];
        const double diag = 1.0 + static_cast<double>(adj.degree(i));
        const double rhs = s[i] + acc;
        residual = std::fmax(residual, std::fabs(diag * z[i] - rhs));
        next[i] = rhs / diag;
    }
    return residual;
}

std::int64_t shield_argmax(double lambda, std::span<const double> u, std::span<const double> b,
                           std::span<const std::uint8_t> blocked, double* best_score) {
    std::int64_t best = -1;
    double best_val = 0.0;
    const double two_lambda = 2.0 * lambda;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (blocked[i]) continue;
        const double score = two_lambda * u[i] * u[i] - 2.0 * u[i] * b[i];
        if (best < 0 || score > best_val) {
            best = static_cast<std::int64_t>(i);
            best_val = score;
        }
    }
    if (best_score) *best_score = best_val;
    return best;
}

}  // namespace

const KernelTable& table() {
    static const KernelTable t{
        Isa::Scalar, dot,          sum_squares,  max_abs,      max_abs_diff, scale,
        axpy,        adjacency_spmv, jacobi_sweep, shield_argmax,
    };
    return t;
}

}  // namespace polarmon::simd::generic
