#pragma once

#include <vector>

#include "pseudospec/grid.hpp"
#include "pseudospec/jacobi.hpp"
#include "pseudospec/params.hpp"

namespace pseudospec {

/// Default closeness (in eps units) for flagging an rm2 level as marginal.
inline constexpr double kMarginalTolerance = 1e-3;

/// One bound-state level. energy == scale * eps exactly.
struct LevelRecord {
  int n = 0;
  double eps = 0.0;
  double energy = 0.0;
  /// Normalizable bound state. For rm2 this needs n < a and (a - n)^2 > b.
  bool valid = true;
  /// rm2 only: eps within tolerance of the lower continuum threshold.
  bool marginal = false;
  /// The weaker rm2 condition n < a on its own (always true elsewhere).
  bool below_cap_a = true;
};

LevelRecord rm1_energy(const DerivedParams& d, int n);
/// Throws level_out_of_range when n >= a.
LevelRecord rm2_energy(const DerivedParams& d, int n,
                       double marginal_tolerance = kMarginalTolerance);
LevelRecord harmonic_energy(const DerivedParams& d, int n);
LevelRecord level_energy(const DerivedParams& d, int n,
                         double marginal_tolerance = kMarginalTolerance);

/// Up to `count` levels starting at n = 0; rm2 stops at the first level that
/// is not a normalizable bound state.
std::vector<LevelRecord> bound_levels(const DerivedParams& d, int count,
                                      double marginal_tolerance = kMarginalTolerance);

/// Lower continuum edge of the rm2 potential, offset - 2b.
double rm2_continuum_threshold(const DerivedParams& d) noexcept;

/// Jacobi parameters (s+, s-) used by the eigenfunction of level n.
struct JacobiExponents {
  Complex sp;
  Complex sm;
};
JacobiExponents rm1_exponents(const DerivedParams& d, int n) noexcept;
JacobiExponents rm2_exponents(const DerivedParams& d, int n) noexcept;

enum class Picture {
  hermitian,      // phi, eigenfunction of h
  non_hermitian,  // psi = rho^-1 phi, eigenfunction of H
};

/// Unnormalized complex rm1 eigenfunction before the phase rotation.
Complex rm1_wavefunction_raw(const DerivedParams& d, int n, Picture picture, double x);
/// Real representatives (unnormalized). Throw domain_violation outside the
/// domain; rm2 throws level_out_of_range for levels that are not bound states.
double rm1_wavefunction(const DerivedParams& d, int n, Picture picture, double x);
double rm2_wavefunction(const DerivedParams& d, int n, Picture picture, double x);
double harmonic_wavefunction(const DerivedParams& d, int n, Picture picture, double x);

/// Closed-form eigenfunction of one level in one picture.
///
/// rm1 values are rotated by the phase at x0 = pi/2 (or at the largest of a
/// fixed set of probe points when the level has a node there), leaving a real
/// function. `imaginary_residual()` reports what the rotation left behind.
class WavefunctionSampler {
 public:
  WavefunctionSampler(const DerivedParams& d, int n, Picture picture);

  double operator()(double x) const;

  /// Raw values at the interior nodes.
  std::vector<double> sample(const GridSpec& g) const;
  /// Unit discrete L2 norm (h * sum v^2 = 1), positive at mid-grid.
  std::vector<double> sample_normalized(const GridSpec& g) const;

  const LevelRecord& level() const noexcept { return level_; }
  Picture picture() const noexcept { return picture_; }
  Family family() const noexcept { return derived_.family; }
  const DerivedParams& derived() const noexcept { return derived_; }

  /// max |Im| / max |Re| over 64 interior probe points (rm1); zero otherwise.
  double imaginary_residual() const;

 private:
  Complex rotated(double x) const;

  DerivedParams derived_;
  LevelRecord level_;
  Picture picture_;
  Complex phase_{1.0, 0.0};
};

/// Scales v to unit discrete L2 norm and flips the sign so the mid-grid entry
/// is positive (first sizeable entry when the midpoint is a node).
void normalize_in_place(std::vector<double>& v, double step);

/// Half-width L for infinite-domain grids: starts at `start` and grows by 2
/// until |phi_0(+-L)| < 1e-12 max|phi_0|. Returns pi for rm1.
double default_half_width(const DerivedParams& d, double start = 12.0);

enum class SusyForm { rm1, rm2 };

/// w^2 - w' - V for the SUSY superpotential w of the given form with
/// parameters (cap_a, cap_b) and V the matching shape-invariant potential with
/// its constant. Should vanish identically.
double susy_factorization_residual(SusyForm form, double cap_a, double cap_b, double x);

}  // namespace pseudospec
