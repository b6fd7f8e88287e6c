// Compiled with -mavx2. Only add/sub/mul/div are used (no FMA) so every lane
// rounds exactly like the scalar reference.
#include <immintrin.h>

#include "kernel_table.hpp"

namespace pseudospec::kernels::detail {

namespace {

void tridiag_apply(const double* sub, const double* diag, const double* sup, const double* x,
                   double* y, std::size_t n) {
  if (n < 6) {
    for (std::size_t i = 0; i < n; ++i) y[i] = tridiag_row(sub, diag, sup, x, i, n);
    return;
  }
  y[0] = tridiag_row(sub, diag, sup, x, 0, n);
  std::size_t i = 1;
  for (; i + 4 <= n - 1; i += 4) {
    const __m256d lo = _mm256_mul_pd(_mm256_loadu_pd(sub + i - 1), _mm256_loadu_pd(x + i - 1));
    const __m256d mid = _mm256_mul_pd(_mm256_loadu_pd(diag + i), _mm256_loadu_pd(x + i));
    const __m256d hi = _mm256_mul_pd(_mm256_loadu_pd(sup + i), _mm256_loadu_pd(x + i + 1));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_add_pd(lo, mid), hi));
  }
  for (; i < n; ++i) y[i] = tridiag_row(sub, diag, sup, x, i, n);
}

void sturm_counts(const double* diag, const double* offdiag_sq, std::size_t n, double pivmin,
                  const double* shifts, int* counts, std::size_t m) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  const __m256d piv = _mm256_set1_pd(pivmin);
  const __m256d neg_piv = _mm256_set1_pd(-pivmin);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= m; j += 4) {
    const __m256d shift = _mm256_loadu_pd(shifts + j);
    __m256i count = _mm256_setzero_si256();
    __m256d q = zero;
    for (std::size_t i = 0; i < n; ++i) {
      const __m256d d = _mm256_sub_pd(_mm256_set1_pd(diag[i]), shift);
      q = i > 0 ? _mm256_sub_pd(d, _mm256_div_pd(_mm256_set1_pd(offdiag_sq[i - 1]), q)) : d;
      const __m256d tiny = _mm256_cmp_pd(_mm256_andnot_pd(sign, q), piv, _CMP_LT_OQ);
      q = _mm256_blendv_pd(q, neg_piv, tiny);
      const __m256d negative = _mm256_cmp_pd(q, zero, _CMP_LT_OQ);
      count = _mm256_sub_epi64(count, _mm256_castpd_si256(negative));
    }
    alignas(32) long long lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), count);
    for (std::size_t l = 0; l < 4; ++l) counts[j + l] = static_cast<int>(lanes[l]);
  }
  for (; j < m; ++j) counts[j] = sturm_count_one(diag, offdiag_sq, n, pivmin, shifts[j]);
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (std::size_t i = n4; i < n; ++i) sum = sum + a[i] * b[i];
  return sum;
}

double weighted_dot(const double* a, const double* w, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d aw = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(w + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(aw, _mm256_loadu_pd(b + i)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (std::size_t i = n4; i < n; ++i) sum = sum + (a[i] * w[i]) * b[i];
  return sum;
}

}  // namespace

const KernelTable& avx2_table() noexcept {
  static const KernelTable table{tridiag_apply, sturm_counts, dot, weighted_dot};
  return table;
}

}  // namespace pseudospec::kernels::detail
