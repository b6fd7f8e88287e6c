#include "pseudospec/superpotential.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "pseudospec/error.hpp"

namespace pseudospec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// log(DBL_MAX)
const double kMaxExponent = std::log(std::numeric_limits<double>::max());

// log cosh without overflow for large |x|.
double log_cosh(double x) {
  const double ax = std::abs(x);
  return ax + std::log1p(std::exp(-2.0 * ax)) - std::numbers::ln2;
}

}  // namespace

std::string_view to_string(Family family) noexcept {
  switch (family) {
    case Family::rm1_trig: return "rm1";
    case Family::rm2_hyp: return "rm2";
    case Family::harmonic: return "harmonic";
  }
  return "unknown";
}

Superpotential Superpotential::rm1(double a1, double b1) {
  if (!(a1 > 0.0) || !(b1 >= 0.0) || !std::isfinite(a1) || !std::isfinite(b1)) {
    std::ostringstream os;
    os << "rm1 superpotential requires A1 > 0 and B1 >= 0 (got A1=" << a1 << ", B1=" << b1 << ")";
    throw Error(ErrorCode::invalid_argument, os.str());
  }
  return Superpotential(Family::rm1_trig, a1, b1);
}

Superpotential Superpotential::rm2(double a2, double b2) {
  if (!(a2 > 0.0) || !(b2 >= 0.0) || !std::isfinite(a2) || !std::isfinite(b2)) {
    std::ostringstream os;
    os << "rm2 superpotential requires A2 > 0 and B2 >= 0 (got A2=" << a2 << ", B2=" << b2 << ")";
    throw Error(ErrorCode::invalid_argument, os.str());
  }
  if (!(b2 < a2 * a2)) {
    std::ostringstream os;
    os << "rm2 superpotential requires B2 < A2^2 (got A2=" << a2 << ", B2=" << b2 << ")";
    throw Error(ErrorCode::invalid_argument, os.str());
  }
  return Superpotential(Family::rm2_hyp, a2, b2);
}

Superpotential Superpotential::harmonic() noexcept {
  return Superpotential(Family::harmonic, 0.0, 0.0);
}

Interval Superpotential::domain() const noexcept {
  if (family_ == Family::rm1_trig) return {0.0, std::numbers::pi};
  return {-kInf, kInf};
}

bool Superpotential::contains(double x) const noexcept {
  if (!std::isfinite(x)) return false;
  if (family_ == Family::rm1_trig) {
    return x > kDomainGuard && x < std::numbers::pi - kDomainGuard;
  }
  return true;
}

void Superpotential::require_inside(double x) const {
  if (!contains(x)) {
    std::ostringstream os;
    os.precision(17);
    os << "x=" << x << " is outside the open domain of the " << to_string(family_)
       << " superpotential";
    throw Error(ErrorCode::domain_violation, os.str());
  }
}

double Superpotential::w(double x) const {
  require_inside(x);
  switch (family_) {
    case Family::rm1_trig: return -p1_ / std::tan(x) - p2_ / p1_;
    case Family::rm2_hyp: return p1_ * std::tanh(x) + p2_ / p1_;
    case Family::harmonic: return x;
  }
  return 0.0;
}

double Superpotential::w_prime(double x) const {
  require_inside(x);
  switch (family_) {
    case Family::rm1_trig: {
      const double s = std::sin(x);
      return p1_ / (s * s);
    }
    case Family::rm2_hyp: {
      const double c = std::cosh(x);
      return p1_ / (c * c);
    }
    case Family::harmonic: return 1.0;
  }
  return 0.0;
}

double Superpotential::antiderivative(double x) const {
  require_inside(x);
  switch (family_) {
    case Family::rm1_trig: return -p1_ * std::log(std::sin(x)) - (p2_ / p1_) * x;
    case Family::rm2_hyp: return p1_ * log_cosh(x) + (p2_ / p1_) * x;
    case Family::harmonic: return 0.5 * x * x;
  }
  return 0.0;
}

double Superpotential::ground_state(double x) const {
  const double log_f0 = log_ground_state(x);
  if (log_f0 > kMaxExponent) {
    std::ostringstream os;
    os.precision(17);
    os << "ground state exp(-Omega) overflows at x=" << x << " (-Omega=" << log_f0 << ")";
    throw Error(ErrorCode::overflow, os.str());
  }
  return std::exp(log_f0);
}

double Superpotential::reflect(double x) const noexcept {
  return family_ == Family::rm1_trig ? std::numbers::pi - x : -x;
}

bool Superpotential::pt_symmetric() const noexcept {
  // cot and tanh are odd about the reflection point; only the constant
  // B/A shift breaks the symmetry.
  return family_ == Family::harmonic || p2_ == 0.0;
}

}  // namespace pseudospec
