#include "pseudospec/jacobi.hpp"

#include <cmath>
#include <vector>

#include "pseudospec/error.hpp"

namespace pseudospec {

namespace {

// A vanishing factor delta in the recurrence denominator costs eps/delta in
// relative accuracy, so anything below this (relative to the parameter scale)
// goes to the series instead.
constexpr double kDegeneracyThreshold = 1e-6;

void require_degree(int n) {
  if (n < 0) throw Error(ErrorCode::invalid_argument, "Jacobi degree must be nonnegative");
}

}  // namespace

Complex binomial(Complex z, int m) {
  Complex r = 1.0;
  for (int j = 0; j < m; ++j) r *= (z - static_cast<double>(j)) / static_cast<double>(j + 1);
  return r;
}

std::optional<Complex> jacobi_recurrence(const JacobiSpec& spec, Complex y) {
  require_degree(spec.n);
  const Complex a = spec.sp;
  const Complex b = spec.sm;
  if (spec.n == 0) return Complex(1.0);

  Complex prev = 1.0;
  Complex cur = (a + 1.0) + (a + b + 2.0) * (y - 1.0) * 0.5;
  const double scale = 1.0 + std::abs(a) + std::abs(b);
  for (int k = 1; k < spec.n; ++k) {
    const double kd = k;
    const Complex ab = a + b;
    const Complex c1 = kd + ab + 1.0;
    const Complex c2 = 2.0 * kd + ab;
    if (std::abs(c1) < kDegeneracyThreshold * (scale + kd) ||
        std::abs(c2) < kDegeneracyThreshold * (scale + kd)) {
      return std::nullopt;
    }
    const Complex lead = 2.0 * (kd + 1.0) * c1 * c2;
    const Complex mid = (c2 + 1.0) * ((c2 + 2.0) * c2 * y + a * a - b * b);
    const Complex back = 2.0 * (kd + a) * (kd + b) * (c2 + 2.0);
    const Complex next = (mid * cur - back * prev) / lead;
    prev = cur;
    cur = next;
  }
  return cur;
}

Complex jacobi_series(const JacobiSpec& spec, Complex y) {
  require_degree(spec.n);
  const int n = spec.n;
  const Complex lo = (y - 1.0) * 0.5;
  const Complex hi = (y + 1.0) * 0.5;
  std::vector<Complex> lo_pow(n + 1, 1.0);
  std::vector<Complex> hi_pow(n + 1, 1.0);
  for (int k = 1; k <= n; ++k) {
    lo_pow[k] = lo_pow[k - 1] * lo;
    hi_pow[k] = hi_pow[k - 1] * hi;
  }
  Complex sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    sum += binomial(spec.sp + static_cast<double>(n), n - k) *
           binomial(spec.sm + static_cast<double>(n), k) * lo_pow[k] * hi_pow[n - k];
  }
  return sum;
}

Complex jacobi(const JacobiSpec& spec, Complex y) {
  if (auto v = jacobi_recurrence(spec, y)) return *v;
  return jacobi_series(spec, y);
}

}  // namespace pseudospec
