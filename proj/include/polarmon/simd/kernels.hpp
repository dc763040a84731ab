#pragma once

// Data-parallel numeric kernels used by the opinion-dynamics solver, the
// power iteration and the NetShield greedy.
//
// Every kernel has a scalar reference in namespace `generic` and optional
// vector variants (`avx2`, `neon`). `kernels()` returns the table picked for
// the running CPU; `kernels_for()` returns a specific table so tests can check
// the variants against the reference.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace polarmon::simd {

/// Symmetric 0/1 adjacency in compressed sparse row form.
/// Row i lists the neighbours of node i in col[row_ptr[i] .. row_ptr[i+1]).
struct CsrView {
    std::span<const std::int32_t> row_ptr;
    std::span<const std::int32_t> col;

    std::size_t rows() const { return row_ptr.empty() ? 0 : row_ptr.size() - 1; }
    std::int32_t degree(std::size_t i) const { return row_ptr[i + 1] - row_ptr[i]; }
};

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa);

struct KernelTable {
    Isa isa;

    double (*dot)(std::span<const double> a, std::span<const double> b);
    double (*sum_squares)(std::span<const double> a);
    double (*max_abs)(std::span<const double> a);
    double (*max_abs_diff)(std::span<const double> a, std::span<const double> b);
    void (*scale)(std::span<double> a, double factor);
    // y = alpha * x + y
    void (*axpy)(double alpha, std::span<const double> x, std::span<double> y);

    // y_i = shift * x_i + sum_{j ~ i} x_j
    void (*adjacency_spmv)(CsrView adj, double shift, std::span<const double> x,
                           std::span<double> y);

    // One Jacobi step of (I + L) z = s:
    //   next_i = (s_i + sum_{j ~ i} z_j) / (1 + deg_i)
    // Returns the infinity-norm residual of the *input* iterate,
    // max_i |(1 + deg_i) z_i - sum_{j ~ i} z_j - s_i|.
    double (*jacobi_sweep)(CsrView adj, std::span<const double> s, std::span<const double> z,
                           std::span<double> next);

    // argmax_i of 2*lambda*u_i^2 - 2*u_i*b_i over i with blocked[i] == 0.
    // Ties resolve to the smallest index. Returns -1 when every entry is blocked.
    std::int64_t (*shield_argmax)(double lambda, std::span<const double> u,
                                  std::span<const double> b, std::span<const std::uint8_t> blocked,
                                  double* best_score);
};

/// Table selected from CPU features at first use. The environment variable
/// POLARMON_SIMD=scalar|avx2|neon forces a variant (ignored if unsupported).
const KernelTable& kernels();

/// Table for a specific ISA, or nullptr if it was not compiled in or the CPU
/// lacks the feature.
const KernelTable* kernels_for(Isa isa);

/// All variants usable on this machine, scalar first.
std::vector<const KernelTable*> available_kernels();

namespace generic {
const KernelTable& table();
}
#if defined(POLARMON_HAVE_AVX2)
namespace avx2 {
const KernelTable& table();
}
#endif
#if defined(POLARMON_HAVE_NEON)
namespace neon {
const KernelTable& table();
}
#endif

}  // namespace polarmon::simd
