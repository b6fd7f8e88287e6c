#pragma once

// Reference implementations used only by the tests. They are written
// independently of the library code they check.

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace oracle {

using ComplexL = std::complex<long double>;

// Jacobi polynomial P_n^{(a,b)}(y) from the terminating Gauss series
//   binom(n + a, n) 2F1(-n, n + a + b + 1; a + 1; (1 - y)/2),
// summed in long double. Falls back to the two-binomial expansion when
// (a + 1)_k vanishes.
inline std::complex<double> jacobi_hypergeometric(int n, std::complex<double> a,
                                                  std::complex<double> b,
                                                  std::complex<double> y) {
  const ComplexL al(a.real(), a.imag());
  const ComplexL bl(b.real(), b.imag());
  const ComplexL yl(y.real(), y.imag());
  const ComplexL z = (ComplexL(1) - yl) / ComplexL(2);

  ComplexL lead(1);
  for (int j = 1; j <= n; ++j) lead *= (al + ComplexL(j)) / ComplexL(j);

  bool singular = false;
  for (int k = 0; k < n; ++k) {
    if (std::abs(al + ComplexL(k + 1)) < 1e-9L) singular = true;
  }
  if (!singular) {
    ComplexL term(1), sum(1);
    for (int k = 0; k < n; ++k) {
      term *= (ComplexL(k - n) * (ComplexL(n + k + 1) + al + bl)) /
              ((al + ComplexL(k + 1)) * ComplexL(k + 1)) * z;
      sum += term;
    }
    const ComplexL r = lead * sum;
    return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
  }

  // sum_k binom(n+a, n-k) binom(n+b, k) ((y-1)/2)^k ((y+1)/2)^(n-k)
  auto binom = [](ComplexL top, int m) {
    ComplexL r(1);
    for (int j = 0; j < m; ++j) r *= (top - ComplexL(j)) / ComplexL(j + 1);
    return r;
  };
  const ComplexL lo = (yl - ComplexL(1)) / ComplexL(2);
  const ComplexL hi = (yl + ComplexL(1)) / ComplexL(2);
  ComplexL sum(0);
  for (int k = 0; k <= n; ++k) {
    sum += binom(ComplexL(n) + al, n - k) * binom(ComplexL(n) + bl, k) * std::pow(lo, k) *
           std::pow(hi, n - k);
  }
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

// Dense symmetric tridiagonal Sturm sequence: number of sign changes of
// det(T_k - x I), k = 0..n, which equals the number of eigenvalues below x.
inline int char_poly_count(const std::vector<double>& diag, const std::vector<double>& off,
                           double x) {
  long double p_prev = 1.0L;
  long double p = diag[0] - static_cast<long double>(x);
  int changes = 0;
  auto sign_change = [](long double a, long double b) { return (a < 0) != (b < 0) && b != 0; };
  if (sign_change(p_prev, p)) ++changes;
  // Rescale to keep the recurrence inside the long double range.
  for (std::size_t k = 1; k < diag.size(); ++k) {
    long double next = (diag[k] - static_cast<long double>(x)) * p -
                       static_cast<long double>(off[k - 1]) * off[k - 1] * p_prev;
    if (next == 0.0L) next = -1e-300L * (p < 0 ? -1 : 1);
    const long double scale = std::fabs(next) > 1e100L ? 1e-100L : 1.0L;
    if (sign_change(p, next)) ++changes;
    p_prev = p * scale;
    p = next * scale;
  }
  return changes;
}

// Composite trapezoid on an interior grid with zero boundary values, and its
// Richardson extrapolation from grids with step h and h/2.
inline double trapezoid(const std::vector<double>& f, double step) {
  long double s = 0.0L;
  for (double v : f) s += v;
  return static_cast<double>(s) * step;
}

inline double richardson(double coarse, double fine) { return (4.0 * fine - coarse) / 3.0; }

}  // namespace oracle
