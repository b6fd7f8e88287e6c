#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "pseudospec/superpotential.hpp"

namespace pseudospec {

/// Coefficients of H = A^dagger A + alpha A^2 + beta A^dagger^2 (dimensionless).
struct SwansonParams {
  double alpha = 0.0;
  double beta = 0.0;

  double scale() const noexcept { return 1.0 - alpha - beta; }
};

namespace constraint {
inline constexpr std::string_view sum_below_one = "alpha + beta < 1";
inline constexpr std::string_view product_below_quarter = "4 alpha beta < 1";
inline constexpr std::string_view alpha_below_beta = "alpha < beta";
inline constexpr std::string_view a1_lower_bound = "A1 > (1 - alpha - beta)/(1 - 4 alpha beta)";
inline constexpr std::string_view b2_below_a2_squared = "B2 < A2^2";
inline constexpr std::string_view mu2_dominates_mu1 = "|mu2| > |mu1|";
inline constexpr std::string_view b_below_a_squared = "b < a^2";
}  // namespace constraint

struct ConstraintFlag {
  std::string name;
  bool pass = false;
};

/// Ordered pass/fail flags, one per constraint that applies to the family.
struct ConstraintReport {
  std::vector<ConstraintFlag> flags;

  bool admissible() const noexcept;
  const ConstraintFlag* first_failure() const noexcept;
  std::optional<bool> get(std::string_view name) const noexcept;
  /// Bit i set iff flags[i] passes.
  std::uint32_t mask() const noexcept;
};

/// Everything derived from (alpha, beta) and the superpotential.
///
/// `strength` is sigma (rm1), chi (rm2) or the squared oscillator frequency
/// (harmonic); `cap_a`/`cap_b` are A/B (rm1), a/b (rm2), or the frequency and
/// zero (harmonic). `offset` is the additive constant of the Schrodinger
/// potential V, and `scale` = 1 - alpha - beta converts eps into E.
struct DerivedParams {
  Family family = Family::harmonic;
  SwansonParams swanson;
  double p1 = 0.0;
  double p2 = 0.0;
  double mu = 0.0;
  double mu1 = 0.0;
  double mu2 = 0.0;
  double strength = 0.0;
  double cap_a = 0.0;
  double cap_b = 0.0;
  double scale = 1.0;
  double offset = 0.0;
  /// Constant added to V on top of k W^2 - W'/s. Zero except for the PT
  /// conventions of `derive_pt`, which measure energies from the ground state.
  double energy_shift = 0.0;
  ConstraintReport constraints;

  /// (1 - 4 alpha beta)/(1 - alpha - beta)^2, the coefficient of W^2 in V.
  double coupling() const noexcept;
};

/// mu = (alpha - beta)/(1 - alpha - beta). Throws singular_gauge at alpha + beta = 1.
double derive_mu(const SwansonParams& p);

/// Never throws; flags that cannot be evaluated (e.g. complex a) report false.
ConstraintReport check_constraints(const SwansonParams& p, const Superpotential& sp);

DerivedParams derive_rm1(const SwansonParams& p, const Superpotential& sp);
DerivedParams derive_rm2(const SwansonParams& p, const Superpotential& sp);
DerivedParams derive_harmonic(const SwansonParams& p);
DerivedParams derive(const SwansonParams& p, const Superpotential& sp);

/// B = 0 specializations with the potential constant -A^2 (rm1) or +a^2 (rm2),
/// so that eps_0 = 0. Throws invalid_argument unless sp is rm1/rm2 with p2 = 0.
DerivedParams derive_pt(const SwansonParams& p, const Superpotential& sp);

// Exact path ---------------------------------------------------------------

using Rational = boost::rational<std::int64_t>;

double to_double(const Rational& r) noexcept;
std::string to_string(const Rational& r);
/// Parses "p/q", an integer, or a terminating decimal such as "0.125".
std::optional<Rational> parse_rational(std::string_view text);
/// Exact square root when both numerator and denominator are perfect squares.
std::optional<Rational> exact_sqrt(const Rational& r);

struct ExactDerived {
  Family family = Family::rm1_trig;
  Rational alpha_plus_beta;
  Rational four_alpha_beta;
  Rational mu;
  Rational mu1;
  Rational mu2;
  Rational strength;
  Rational cap_b;
  Rational scale;
  /// 1 + 4 strength; cap_a = (1 +- sqrt(discriminant))/2.
  Rational discriminant;
  std::optional<Rational> cap_a_exact;
  double cap_a = 0.0;
};

/// Rational evaluation of the rm1/rm2 parameter maps. Throws singular_gauge
/// at alpha + beta = 1 and invalid_argument for the harmonic family.
ExactDerived derive_exact(Family family, Rational alpha, Rational beta, Rational p1,
                          Rational p2);

}  // namespace pseudospec
