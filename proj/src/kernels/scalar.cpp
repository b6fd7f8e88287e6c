#include "kernel_table.hpp"

namespace pseudospec::kernels::detail {

namespace {

void tridiag_apply(const double* sub, const double* diag, const double* sup, const double* x,
                   double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = tridiag_row(sub, diag, sup, x, i, n);
}

void sturm_counts(const double* diag, const double* offdiag_sq, std::size_t n, double pivmin,
                  const double* shifts, int* counts, std::size_t m) {
  for (std::size_t j = 0; j < m; ++j) {
    counts[j] = sturm_count_one(diag, offdiag_sq, n, pivmin, shifts[j]);
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    for (std::size_t l = 0; l < 4; ++l) acc[l] = acc[l] + a[i + l] * b[i + l];
  }
  double sum = (acc[0] + acc[1]) + (acc[2] + acc[3]);
  for (std::size_t i = n4; i < n; ++i) sum = sum + a[i] * b[i];
  return sum;
}

double weighted_dot(const double* a, const double* w, const double* b, std::size_t n) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    for (std::size_t l = 0; l < 4; ++l) acc[l] = acc[l] + (a[i + l] * w[i + l]) * b[i + l];
  }
  double sum = (acc[0] + acc[1]) + (acc[2] + acc[3]);
  for (std::size_t i = n4; i < n; ++i) sum = sum + (a[i] * w[i]) * b[i];
  return sum;
}

}  // namespace

const KernelTable& scalar_table() noexcept {
  static const KernelTable table{tridiag_apply, sturm_counts, dot, weighted_dot};
  return table;
}

}  // namespace pseudospec::kernels::detail
