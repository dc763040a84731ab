// Compiled with -mavx2 -mfma. Only reached through the dispatcher after a
// runtime CPU check, so nothing here may be called on older hardware.

#include "polarmon/simd/kernels.hpp"

#include <immintrin.h>

#include <cmath>
#include <limits>

namespace polarmon::simd::avx2 {
namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double hmax(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d m = _mm_max_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

inline __m256d abs_pd(__m256d v) {
    return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

// Sum of x[col[e]] over one CSR row.
inline double gather_row_sum(const std::int32_t* col, std::int32_t begin, std::int32_t end,
                             const double* x) {
    __m256d acc = _mm256_setzero_pd();
    std::int32_t e = begin;
    for (; e + 4 <= end; e += 4) {
        const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(col + e));
        acc = _mm256_add_pd(acc, _mm256_i32gather_pd(x, idx, 8));
    }
    double sum = hsum(acc);
    for (; e < end; ++e) sum += x[col[e]];
    return sum;
}

double dot(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i]), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(&a[i + 4]), _mm256_loadu_pd(&b[i + 4]), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i]), acc0);
    double sum = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) sum += a[i] * b[i];
    return sum;
}

double sum_squares(std::span<const double> a) { return dot(a, a); }

double max_abs(std::span<const double> a) {
    const std::size_t n = a.size();
    __m256d m = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, abs_pd(_mm256_loadu_pd(&a[i])));
    double r = hmax(m);
    for (; i < n; ++i) r = std::fmax(r, std::fabs(a[i]));
    return r;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    __m256d m = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        m = _mm256_max_pd(m, abs_pd(_mm256_sub_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i]))));
    double r = hmax(m);
    for (; i < n; ++i) r = std::fmax(r, std::fabs(a[i] - b[i]));
    return r;
}

void scale(std::span<double> a, double factor) {
    const std::size_t n = a.size();
    const __m256d f = _mm256_set1_pd(factor);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(&a[i], _mm256_mul_pd(_mm256_loadu_pd(&a[i]), f));
    for (; i < n; ++i) a[i] *= factor;
}

// Multiply and add kept separate so results match the scalar reference bit for bit.
void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    const std::size_t n = x.size();
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(&x[i]));
        _mm256_storeu_pd(&y[i], _mm256_add_pd(_mm256_loadu_pd(&y[i]), prod));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void adjacency_spmv(CsrView adj, double shift, std::span<const double> x, std::span<double> y) {
    const std::size_t n = adj.rows();
    const std::int32_t* rp = adj.row_ptr.data();
    const std::int32_t* col = adj.col.data();
    for (std::size_t i = 0; i < n; ++i) y[i] = shift * x[i] + gather_row_sum(col, rp[i], rp[i + 1], x.data());
}

double jacobi_sweep(CsrView adj, std::span<const double> s, std::span<const double> z,
                    std::span<double> next) {
    const std::size_t n = adj.rows();
    const std::int32_t* rp = adj.row_ptr.data();
    const std::int32_t* col = adj.col.data();
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double acc = gather_row_sum(col, rp[i], rp[i + 1], z.data());
        const double diag = 1.0 + static_cast<double>(rp[i + 1] - rp[i]);
        const double rhs = s[i] + acc;
        residual = std::fmax(residual, std::fabs(diag * z[i] - rhs));
        next[i] = rhs / diag;
    }
    return residual;
}

std::int64_t shield_argmax(double lambda, std::span<const double> u, std::span<const double> b,
                           std::span<const std::uint8_t> blocked, double* best_score) {
    const std::size_t n = u.size();
    const double neg_inf = -std::numeric_limits<double>::infinity();
    const __m256d two_lambda = _mm256_set1_pd(2.0 * lambda);
    const __m256d two = _mm256_set1_pd(2.0);
    __m256d best_val = _mm256_set1_pd(neg_inf);
    __m256d best_idx = _mm256_set1_pd(-1.0);
    __m256d lane_idx = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
    const __m256d step = _mm256_set1_pd(4.0);

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vu = _mm256_loadu_pd(&u[i]);
        const __m256d vb = _mm256_loadu_pd(&b[i]);
        // Same operation order as the scalar reference: ((2l*u)*u) - ((2*u)*b).
        const __m256d score = _mm256_sub_pd(_mm256_mul_pd(_mm256_mul_pd(two_lambda, vu), vu),
                                            _mm256_mul_pd(_mm256_mul_pd(two, vu), vb));
        const __m256d open = _mm256_setr_pd(blocked[i] ? 0.0 : 1.0, blocked[i + 1] ? 0.0 : 1.0,
                                            blocked[i + 2] ? 0.0 : 1.0, blocked[i + 3] ? 0.0 : 1.0);
        const __m256d is_open = _mm256_cmp_pd(open, _mm256_setzero_pd(), _CMP_GT_OQ);
        const __m256d no_best = _mm256_cmp_pd(best_idx, _mm256_setzero_pd(), _CMP_LT_OQ);
        const __m256d better = _mm256_or_pd(_mm256_cmp_pd(score, best_val, _CMP_GT_OQ), no_best);
        const __m256d take = _mm256_and_pd(is_open, better);
        best_val = _mm256_blendv_pd(best_val, score, take);
        best_idx = _mm256_blendv_pd(best_idx, lane_idx, take);
        lane_idx = _mm256_add_pd(lane_idx, step);
    }

    alignas(32) double vals[4];
    alignas(32) double idxs[4];
    _mm256_store_pd(vals, best_val);
    _mm256_store_pd(idxs, best_idx);
    std::int64_t best = -1;
    double best_v = 0.0;
    for (int lane = 0; lane < 4; ++lane) {
        if (idxs[lane] < 0.0) continue;
        const auto idx = static_cast<std::int64_t>(idxs[lane]);
        if (best < 0 || vals[lane] > best_v || (vals[lane] == best_v && idx < best)) {
            best = idx;
            best_v = vals[lane];
        }
    }
    const double tl = 2.0 * lambda;
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
        Isa::Avx2,   dot,          sum_squares,  max_abs,      max_abs_diff, scale,
        axpy,        adjacency_spmv, jacobi_sweep, shield_argmax,
    };
    return t;
}

}  // namespace polarmon::simd::avx2
