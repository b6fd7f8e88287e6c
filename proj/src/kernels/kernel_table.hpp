#pragma once

#include <cstddef>

namespace pseudospec::kernels::detail {

// Raw-pointer signatures; the public span API validates sizes before calling.
struct KernelTable {
  void (*tridiag_apply)(const double* sub, const double* diag, const double* sup,
                        const double* x, double* y, std::size_t n);
  void (*sturm_counts)(const double* diag, const double* offdiag_sq, std::size_t n,
                       double pivmin, const double* shifts, int* counts, std::size_t m);
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*weighted_dot)(const double* a, const double* w, const double* b, std::size_t n);
};

const KernelTable& scalar_table() noexcept;
#if defined(PSEUDOSPEC_HAVE_AVX2)
const KernelTable& avx2_table() noexcept;
#endif
#if defined(PSEUDOSPEC_HAVE_NEON)
const KernelTable& neon_table() noexcept;
#endif

// Shared pieces the SIMD variants reuse for boundaries and tails, so those
// elements go through exactly the scalar code path.
inline double tridiag_row(const double* sub, const double* diag, const double* sup,
                          const double* x, std::size_t i, std::size_t n) {
  double t = diag[i] * x[i];
  if (i > 0) t = sub[i - 1] * x[i - 1] + t;
  if (i + 1 < n) t = t + sup[i] * x[i + 1];
  return t;
}

inline int sturm_count_one(const double* diag, const double* offdiag_sq, std::size_t n,
                           double pivmin, double shift) {
  int count = 0;
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = diag[i] - shift;
    q = i > 0 ? d - offdiag_sq[i - 1] / q : d;
    if ((q < 0.0 ? -q : q) < pivmin) q = -pivmin;
    count += q < 0.0 ? 1 : 0;
  }
  return count;
}

}  // namespace pseudospec::kernels::detail
