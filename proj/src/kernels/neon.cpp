// aarch64 only. Two float64x2 registers stand in for one AVX2 register so the
// four-way accumulation order matches the scalar reference.
#include <arm_neon.h>

#include "kernel_table.hpp"

namespace pseudospec::kernels::detail {

namespace {

void tridiag_apply(const double* sub, const double* diag, const double* sup, const double* x,
                   double* y, std::size_t n) {
  if (n < 4) {
    for (std::size_t i = 0; i < n; ++i) y[i] = tridiag_row(sub, diag, sup, x, i, n);
    return;
  }
  y[0] = tridiag_row(sub, diag, sup, x, 0, n);
  std::size_t i = 1;
  for (; i + 2 <= n - 1; i += 2) {
    const float64x2_t lo = vmulq_f64(vld1q_f64(sub + i - 1), vld1q_f64(x + i - 1));
    const float64x2_t mid = vmulq_f64(vld1q_f64(diag + i), vld1q_f64(x + i));
    const float64x2_t hi = vmulq_f64(vld1q_f64(sup + i), vld1q_f64(x + i + 1));
    vst1q_f64(y + i, vaddq_f64(vaddq_f64(lo, mid), hi));
  }
  for (; i < n; ++i) y[i] = tridiag_row(sub, diag, sup, x, i, n);
}

void sturm_counts(const double* diag, const double* offdiag_sq, std::size_t n, double pivmin,
                  const double* shifts, int* counts, std::size_t m) {
  const float64x2_t piv = vdupq_n_f64(pivmin);
  const float64x2_t neg_piv = vdupq_n_f64(-pivmin);
  const float64x2_t zero = vdupq_n_f64(0.0);
  std::size_t j = 0;
  for (; j + 2 <= m; j += 2) {
    const float64x2_t shift = vld1q_f64(shifts + j);
    uint64x2_t count = vdupq_n_u64(0);
    float64x2_t q = zero;
    for (std::size_t i = 0; i < n; ++i) {
      const float64x2_t d = vsubq_f64(vdupq_n_f64(diag[i]), shift);
      q = i > 0 ? vsubq_f64(d, vdivq_f64(vdupq_n_f64(offdiag_sq[i - 1]), q)) : d;
      const uint64x2_t tiny = vcltq_f64(vabsq_f64(q), piv);
      q = vbslq_f64(tiny, neg_piv, q);
      count = vsubq_u64(count, vcltq_f64(q, zero));
    }
    counts[j] = static_cast<int>(vgetq_lane_u64(count, 0));
    counts[j + 1] = static_cast<int>(vgetq_lane_u64(count, 1));
  }
  for (; j < m; ++j) counts[j] = sturm_count_one(diag, offdiag_sq, n, pivmin, shifts[j]);
}

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc01 = vdupq_n_f64(0.0);
  float64x2_t acc23 = vdupq_n_f64(0.0);
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    acc01 = vaddq_f64(acc01, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    acc23 = vaddq_f64(acc23, vmulq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)));
  }
  double sum = (vgetq_lane_f64(acc01, 0) + vgetq_lane_f64(acc01, 1)) +
               (vgetq_lane_f64(acc23, 0) + vgetq_lane_f64(acc23, 1));
  for (std::size_t i = n4; i < n; ++i) sum = sum + a[i] * b[i];
  return sum;
}

double weighted_dot(const double* a, const double* w, const double* b, std::size_t n) {
  float64x2_t acc01 = vdupq_n_f64(0.0);
  float64x2_t acc23 = vdupq_n_f64(0.0);
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    const float64x2_t aw01 = vmulq_f64(vld1q_f64(a + i), vld1q_f64(w + i));
    const float64x2_t aw23 = vmulq_f64(vld1q_f64(a + i + 2), vld1q_f64(w + i + 2));
    acc01 = vaddq_f64(acc01, vmulq_f64(aw01, vld1q_f64(b + i)));
    acc23 = vaddq_f64(acc23, vmulq_f64(aw23, vld1q_f64(b + i + 2)));
  }
  double sum = (vgetq_lane_f64(acc01, 0) + vgetq_lane_f64(acc01, 1)) +
               (vgetq_lane_f64(acc23, 0) + vgetq_lane_f64(acc23, 1));
  for (std::size_t i = n4; i < n; ++i) sum = sum + (a[i] * w[i]) * b[i];
  return sum;
}

}  // namespace

const KernelTable& neon_table() noexcept {
  static const KernelTable table{tridiag_apply, sturm_counts, dot, weighted_dot};
  return table;
}

}  // namespace pseudospec::kernels::detail
