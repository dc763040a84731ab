// AArch64 Advanced SIMD variants. NEON is mandatory on AArch64, so the
// dispatcher enables this table unconditionally there.

#include "polarmon/simd/kernels.hpp"

#include <arm_neon.h>

#include <cmath>

namespace polarmon::simd::neon {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(&a[i]), vld1q_f64(&b[i]));
        acc1 = vfmaq_f64(acc1, vld1q_f64(&a[i + 2]), vld1q_f64(&b[i + 2]));
    }
    double sum = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) sum += a[i] * b[i];
    return sum;
}

double sum_squares(std::span<const double> a) { return dot(a, a); }

double max_abs(std::span<const double> a) {
    const std::size_t n = a.size();
    float64x2_t m = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) m = vmaxq_f64(m, vabsq_f64(vld1q_f64(&a[i])));
    double r = vmaxvq_f64(m);
    for (; i < n; ++i) r = std::fmax(r, std::fabs(a[i]));
    return r;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    float64x2_t m = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) m = vmaxq_f64(m, vabdq_f64(vld1q_f64(&a[i]), vld1q_f64(&b[i])));
    double r = vmaxvq_f64(m);
    for (; i < n; ++i) r = std::fmax(r, std::fabs(a[i] - b[i]));
    return r;
}

void scale(std::span<double> a, double factor) {
    const std::size_t n = a.size();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(&a[i], vmulq_n_f64(vld1q_f64(&a[i]), factor));
    for (; i < n; ++i) a[i] *= factor;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    const std::size_t n = x.size();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(&y[i], vaddq_f64(vld1q_f64(&y[i]), vmulq_n_f64(vld1q_f64(&x[i]), alpha)));
    for (; i < n; ++i) y[i] += alpha * x[i];
}

// No gather on NEON; two independent accumulators hide the load latency.
inline double row_sum(const std::int32_t* col, std::int32_t begin, std::int32_t end, const double* x) {
    double s0 = 0.0, s1 = 0.0;
    std::int32_t e = begin;
    for (; e + 2 <= end; e += 2) {
        s0 += x[col[e]];
        s1 += x[col[e + 1]];
    }
    if (e < end) s0 += x[col[e]];
    return s0 + s1;
}

void adjacency_spmv(CsrView adj, double shift, std::span<const double> x, std::span<double> y) {
    const std::size_t n = adj.rows();
    for (std::size_t i = 0; i < n; ++i)
        y[i] = shift * x[i] + row_sum(adj.col.data(), adj.row_ptr[i], adj.row_ptr[i + 1], x.data());
}

double jacobi_sweep(CsrView adj, std::span<const double> s, std::span<const double> z,
                    std::span<double> next) {
    const std::size_t n = adj.rows();
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double acc = row_sum(adj.col.data(), adj.row_ptr[i], adj.row_ptr[i + 1], z.data());
        const double diag = 1.0 + static_cast<double>(adj.degree(i));
        const double rhs = s[i] + acc;
        residual = std::fmax(residual, std::fabs(diag * z[i] - rhs));
        next[i] = rhs / diag;
    }
    return residual;
}

std::int64_t shield_argmax(double lambda, std::span<const double> u, std::span<const double> b,
                           std::span<const std::uint8_t> blocked, double* best_score) {
    // Scores are computed two at a time; the selection itself stays scalar so
    // the tie rule (smallest index) is identical to the reference.
    const std::size_t n = u.size();
    const double tl = 2.0 * lambda;
    std::int64_t best = -1;
    double best_v = 0.0;
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t vu = vld1q_f64(&u[i]);
        const float64x2_t vb = vld1q_f64(&b[i]);
        const float64x2_t score =
            vsubq_f64(vmulq_f64(vmulq_n_f64(vu, tl), vu), vmulq_f64(vmulq_n_f64(vu, 2.0), vb));
        double sc[2];
        vst1q_f64(sc, score);
        for (int lane = 0; lane < 2; ++lane) {
            if (blocked[i + lane]) continue;
            if (best < 0 || sc[lane] > best_v) {
                best = static_cast<std::int64_t>(i + lane);
                best_v = sc[lane];
            }
        }
    }
    for (; i < n; ++i) {
        if (blocked[i]) continue;
        const double score = tl * u[i] * u[i] - 2.0 * u[i] * b[i];
        if (best < 0 || score > best_v) {
            best = static_cast<std::int64_t>(i);
            best_v = score;
        }
    }
    if (best_score) *best_score = best_v;
    return best;
}

}  // namespace

const KernelTable& table() {
    static const KernelTable t{
        Isa::Neon,   dot,          sum_squares,  max_abs,      max_abs_diff, scale,
        axpy,        adjacency_spmv, jacobi_sweep, shield_argmax,
    };
    return t;
}

}  // namespace polarmon::simd::neon
