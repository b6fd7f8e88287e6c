#pragma once

#include <complex>
#include <optional>

namespace pseudospec {

using Complex = std::complex<double>;

/// Degree and parameters of P_n^{(sp, sm)}. Parameters may be any complex
/// numbers, including negative and non-real values.
struct JacobiSpec {
  int n = 0;
  Complex sp;
  Complex sm;
};

/// Jacobi polynomial in the standard normalization P_n(1) = binom(n + sp, n),
/// evaluated by the three-term recurrence in the degree. Falls back to
/// `jacobi_series` when a recurrence denominator is (nearly) singular.
/// Throws invalid_argument for n < 0.
Complex jacobi(const JacobiSpec& spec, Complex y);

/// Recurrence only; nullopt when a denominator factor is within the
/// degeneracy threshold of zero.
std::optional<Complex> jacobi_recurrence(const JacobiSpec& spec, Complex y);

/// Finite hypergeometric sum
///   sum_k binom(n+sp, n-k) binom(n+sm, k) ((y-1)/2)^k ((y+1)/2)^(n-k).
Complex jacobi_series(const JacobiSpec& spec, Complex y);

/// Generalized binomial coefficient binom(z, m) for integer m >= 0.
Complex binomial(Complex z, int m);

}  // namespace pseudospec
