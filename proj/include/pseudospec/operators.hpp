#pragma once

#include <array>
#include <span>
#include <vector>

#include "pseudospec/grid.hpp"
#include "pseudospec/params.hpp"

namespace pseudospec {

/// Tridiagonal matrix on the interior nodes of a grid.
/// sub[i] = T(i+1, i), sup[i] = T(i, i+1).
struct TridiagonalOperator {
  std::vector<double> sub;
  std::vector<double> diag;
  std::vector<double> sup;
  bool symmetric = false;
  /// Grid spacing the matrix was assembled on (sets the discrete L2 norm).
  double step = 1.0;

  std::size_t size() const noexcept { return diag.size(); }
  void apply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> apply(std::span<const double> x) const;
  TridiagonalOperator transpose() const;
};

/// Positive diagonal operator stored through its logarithms.
struct DiagonalOperator {
  std::vector<double> log_entries;

  std::size_t size() const noexcept { return log_entries.size(); }
  double entry(std::size_t i) const;
  /// Throws overflow (naming the node) if an entry is not representable.
  std::vector<double> entries() const;
  DiagonalOperator inverse() const;
};

/// V = k W^2 - W'/s + energy_shift with k = (1 - 4 alpha beta)/s^2, s = 1 - alpha - beta.
double potential_v(const DerivedParams& d, const Superpotential& sp, double x);
/// Closed form per family: sigma csc^2 x + 2B cot x + c, -chi sech^2 x + 2b tanh x + c,
/// or omega^2 x^2 + c.
double potential_v_closed_form(const DerivedParams& d, double x);

/// Pointwise coefficients of H = -kinetic d^2 + drift d + potential.
struct SwansonCoefficients {
  double kinetic;
  double drift;
  double potential;
};
SwansonCoefficients swanson_coefficients(const SwansonParams& p, const Superpotential& sp,
                                         double x);

/// Central second difference plus V on the interior nodes; symmetric.
TridiagonalOperator build_h(const DerivedParams& d, const Superpotential& sp, const GridSpec& g);
/// Central differences for both derivative terms. Throws singular_gauge at alpha + beta = 1.
TridiagonalOperator build_H(const SwansonParams& p, const Superpotential& sp, const GridSpec& g);
/// Exact transpose of build_H.
TridiagonalOperator build_H_dagger(const SwansonParams& p, const Superpotential& sp,
                                   const GridSpec& g);
/// Same, plus s * d.energy_shift on the diagonal so that E = s eps holds for
/// the shifted conventions too.
TridiagonalOperator build_H(const DerivedParams& d, const Superpotential& sp, const GridSpec& g);
TridiagonalOperator build_H_dagger(const DerivedParams& d, const Superpotential& sp,
                                   const GridSpec& g);

/// rho_ii = exp(-mu Omega(x_i)); eta = rho^2.
DiagonalOperator build_rho(const SwansonParams& p, const Superpotential& sp, const GridSpec& g);
DiagonalOperator build_eta(const SwansonParams& p, const Superpotential& sp, const GridSpec& g);

inline constexpr int kProbeCount = 5;
inline constexpr int kProbeBumpPower = 6;

/// v_m(x) = sin(m pi t) sin^6(pi t), t = (x - x_min)/(x_max - x_min), m = 1..5.
std::array<std::vector<double>, kProbeCount> probe_vectors(const GridSpec& g);

/// rho H rho^-1 / s - h, assembled entrywise from log rho differences so that
/// the alpha = beta case is exactly zero.
TridiagonalOperator conjugation_defect(const SwansonParams& p, const Superpotential& sp,
                                       const GridSpec& g);
/// H^T eta - eta H (antisymmetric, zero diagonal).
TridiagonalOperator pseudo_hermiticity_defect(const SwansonParams& p, const Superpotential& sp,
                                              const GridSpec& g);

/// max over the probe vectors of ||D v|| / ||v||.
double probe_residual(const TridiagonalOperator& defect, const GridSpec& g);
double conjugation_residual(const SwansonParams& p, const Superpotential& sp, const GridSpec& g);
double pseudo_hermiticity_residual(const SwansonParams& p, const Superpotential& sp,
                                   const GridSpec& g);

}  // namespace pseudospec
