#pragma once

#include <span>
#include <string_view>

// Inner loops shared by operator assembly, residuals and the eigensolver.
//
// Every kernel has a scalar reference and SIMD variants (AVX2 on x86-64, NEON
// on aarch64) selected at runtime. The variants perform the same IEEE
// operations in the same association order as the scalar code, so results are
// bit-identical across ISAs; the equivalence tests hold them to that.

namespace pseudospec::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view to_string(Isa isa) noexcept;

/// Compiled in and supported by the running CPU.
bool is_supported(Isa isa) noexcept;

/// Best supported ISA, unless PSEUDOSPEC_SIMD=scalar|avx2|neon says otherwise.
Isa active_isa() noexcept;

/// Throws invalid_argument if `isa` is not supported here.
void set_active_isa(Isa isa);

/// y = T x for the tridiagonal T with sub[i] = T(i+1, i), sup[i] = T(i, i+1).
/// sub and sup have diag.size() - 1 entries; x and y have diag.size().
void tridiag_apply(Isa isa, std::span<const double> sub, std::span<const double> diag,
                   std::span<const double> sup, std::span<const double> x, std::span<double> y);

/// Sturm counts of the symmetric tridiagonal (diag, offdiag^2): counts[j] is the
/// number of eigenvalues strictly below shifts[j]. Pivots smaller than pivmin
/// in magnitude are replaced by -pivmin.
void sturm_counts(Isa isa, std::span<const double> diag, std::span<const double> offdiag_sq,
                  double pivmin, std::span<const double> shifts, std::span<int> counts);

/// Sum a[i] * b[i], accumulated in four interleaved partial sums.
double dot(Isa isa, std::span<const double> a, std::span<const double> b);

/// Sum a[i] * w[i] * b[i], same accumulation order as `dot`.
double weighted_dot(Isa isa, std::span<const double> a, std::span<const double> w,
                    std::span<const double> b);

inline void tridiag_apply(std::span<const double> sub, std::span<const double> diag,
                          std::span<const double> sup, std::span<const double> x,
                          std::span<double> y) {
  tridiag_apply(active_isa(), sub, diag, sup, x, y);
}
inline void sturm_counts(std::span<const double> diag, std::span<const double> offdiag_sq,
                         double pivmin, std::span<const double> shifts, std::span<int> counts) {
  sturm_counts(active_isa(), diag, offdiag_sq, pivmin, shifts, counts);
}
inline double dot(std::span<const double> a, std::span<const double> b) {
  return dot(active_isa(), a, b);
}
inline double weighted_dot(std::span<const double> a, std::span<const double> w,
                           std::span<const double> b) {
  return weighted_dot(active_isa(), a, w, b);
}

}  // namespace pseudospec::kernels
