#pragma once

#include <limits>
#include <string_view>

namespace pseudospec {

enum class Family {
  rm1_trig,  // W = -A1 cot x - B1/A1 on (0, pi)
  rm2_hyp,   // W = A2 tanh x + B2/A2 on the real line
  harmonic,  // W = x
};

std::string_view to_string(Family family) noexcept;

struct Interval {
  double lo;
  double hi;

  bool bounded() const noexcept {
    return lo > -std::numeric_limits<double>::infinity() &&
           hi < std::numeric_limits<double>::infinity();
  }
  double midpoint() const noexcept { return bounded() ? 0.5 * (lo + hi) : 0.0; }
};

/// Guard margin applied at finite domain ends so cot/csc are never evaluated
/// at their poles.
inline constexpr double kDomainGuard = 1e-12;

/// A pseudo superpotential W(x) with closed-form derivative and antiderivative.
///
/// Values are immutable after construction. Antiderivative constants are fixed
/// by the closed forms:
///   rm1:      Omega = -A1 ln sin x - (B1/A1) x
///   rm2:      Omega =  A2 ln cosh x + (B2/A2) x
///   harmonic: Omega = x^2 / 2
/// Any other constant only rescales rho and cancels in rho H rho^-1.
class Superpotential {
 public:
  /// Throws invalid_argument unless a1 > 0 and b1 >= 0.
  static Superpotential rm1(double a1, double b1);
  /// Throws invalid_argument unless a2 > 0, 0 <= b2 < a2^2.
  static Superpotential rm2(double a2, double b2);
  static Superpotential harmonic() noexcept;

  Family family() const noexcept { return family_; }
  double p1() const noexcept { return p1_; }
  double p2() const noexcept { return p2_; }
  Interval domain() const noexcept;

  bool contains(double x) const noexcept;

  double w(double x) const;
  double w_prime(double x) const;
  double antiderivative(double x) const;

  /// f0 = exp(-Omega), the node-free ground state of A^dagger A. Returns 0 on
  /// underflow; throws overflow when -Omega exceeds the double exponent range.
  double ground_state(double x) const;
  double log_ground_state(double x) const { return -antiderivative(x); }

  /// Reflection that plays the role of parity on the domain: x -> -x on the
  /// line, x -> pi - x on (0, pi).
  double reflect(double x) const noexcept;

  /// True iff W is odd under `reflect` (the PT condition on W).
  bool pt_symmetric() const noexcept;

 private:
  Superpotential(Family family, double p1, double p2) noexcept
      : family_(family), p1_(p1), p2_(p2) {}

  void require_inside(double x) const;

  Family family_;
  double p1_;
  double p2_;
};

/// PT symmetry of the model: B = 0 for the Rosen-Morse families, always for
/// the oscillator.
inline bool pt_check(const Superpotential& sp) noexcept { return sp.pt_symmetric(); }

}  // namespace pseudospec
