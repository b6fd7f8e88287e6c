#include "pseudospec/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pseudospec/error.hpp"
#include "pseudospec/kernels.hpp"

namespace pseudospec {

namespace {

void require_family(const DerivedParams& d, Family expected, const char* op) {
  if (d.family != expected) {
    std::ostringstream os;
    os << op << " needs " << to_string(expected) << " parameters, got " << to_string(d.family);
    throw Error(ErrorCode::invalid_argument, os.str());
  }
}

void require_level(int n) {
  if (n < 0) throw Error(ErrorCode::invalid_argument, "level index must be nonnegative");
}

void require_rm1_domain(double x) {
  if (!(x > kDomainGuard && x < std::numbers::pi - kDomainGuard)) {
    std::ostringstream os;
    os.precision(17);
    os << "x=" << x << " is outside (0, pi)";
    throw Error(ErrorCode::domain_violation, os.str());
  }
}

void require_finite(double x) {
  if (!std::isfinite(x)) throw Error(ErrorCode::domain_violation, "x must be finite");
}

// log(1 + e^z) without overflow.
double log1pexp(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double hermite(int n, double t) {
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 2.0 * t;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * t * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

// Levels ---------------------------------------------------------------------

LevelRecord rm1_energy(const DerivedParams& d, int n) {
  require_family(d, Family::rm1_trig, "rm1_energy");
  require_level(n);
  const double k = d.cap_a + n;
  LevelRecord r;
  r.n = n;
  r.eps = k * k - (d.cap_b * d.cap_b) / (k * k) + d.offset;
  r.energy = d.scale * r.eps;
  return r;
}

double rm2_continuum_threshold(const DerivedParams& d) noexcept { return d.offset - 2.0 * d.cap_b; }

LevelRecord rm2_energy(const DerivedParams& d, int n, double marginal_tolerance) {
  require_family(d, Family::rm2_hyp, "rm2_energy");
  require_level(n);
  const double k = d.cap_a - n;
  if (!(k > 0.0)) {
    std::ostringstream os;
    os << "level n=" << n << " is not below a=" << d.cap_a;
    throw Error(ErrorCode::level_out_of_range, os.str());
  }
  LevelRecord r;
  r.n = n;
  r.eps = -k * k - (d.cap_b * d.cap_b) / (k * k) + d.offset;
  r.energy = d.scale * r.eps;
  r.below_cap_a = true;
  r.valid = k * k > d.cap_b;
  r.marginal = std::abs(r.eps - rm2_continuum_threshold(d)) < marginal_tolerance;
  return r;
}

LevelRecord harmonic_energy(const DerivedParams& d, int n) {
  require_family(d, Family::harmonic, "harmonic_energy");
  require_level(n);
  LevelRecord r;
  r.n = n;
  r.eps = (2.0 * n + 1.0) * d.cap_a + d.offset;
  r.energy = d.scale * r.eps;
  return r;
}

LevelRecord level_energy(const DerivedParams& d, int n, double marginal_tolerance) {
  switch (d.family) {
    case Family::rm1_trig: return rm1_energy(d, n);
    case Family::rm2_hyp: return rm2_energy(d, n, marginal_tolerance);
    case Family::harmonic: return harmonic_energy(d, n);
  }
  throw Error(ErrorCode::invalid_argument, "unknown family");
}

std::vector<LevelRecord> bound_levels(const DerivedParams& d, int count, double marginal_tolerance) {
  std::vector<LevelRecord> levels;
  for (int n = 0; n < count; ++n) {
    if (d.family == Family::rm2_hyp && !(d.cap_a - n > 0.0)) break;
    LevelRecord r = level_energy(d, n, marginal_tolerance);
    if (!r.valid) break;
    levels.push_back(r);
  }
  return levels;
}

JacobiExponents rm1_exponents(const DerivedParams& d, int n) noexcept {
  const double k = d.cap_a + n;
  return {Complex(-k, d.cap_b / k), Complex(-k, -d.cap_b / k)};
}

JacobiExponents rm2_exponents(const DerivedParams& d, int n) noexcept {
  const double k = d.cap_a - n;
  return {Complex(k + d.cap_b / k, 0.0), Complex(k - d.cap_b / k, 0.0)};
}

// Wavefunctions --------------------------------------------------------------

Complex rm1_wavefunction_raw(const DerivedParams& d, int n, Picture picture, double x) {
  require_family(d, Family::rm1_trig, "rm1_wavefunction");
  require_level(n);
  require_rm1_domain(x);
  const double k = d.cap_a + n;
  const JacobiExponents s = rm1_exponents(d, n);
  // With y = i cot x the polynomial takes its parameters in the order (s-, s+).
  const Complex p = jacobi({n, s.sm, s.sp}, Complex(0.0, 1.0 / std::tan(x)));
  double sin_power = k;
  double exp_rate = d.cap_b / k;
  if (picture == Picture::non_hermitian) {
    sin_power += d.mu2;
    exp_rate -= d.mu1;
  }
  return std::exp(sin_power * std::log(std::sin(x)) + exp_rate * x) * p;
}

double rm1_wavefunction(const DerivedParams& d, int n, Picture picture, double x) {
  return WavefunctionSampler(d, n, picture)(x);
}

double rm2_wavefunction(const DerivedParams& d, int n, Picture picture, double x) {
  require_family(d, Family::rm2_hyp, "rm2_wavefunction");
  require_finite(x);
  const LevelRecord level = rm2_energy(d, n);
  if (!level.valid) {
    std::ostringstream os;
    os << "rm2 level n=" << n << " is not normalizable ((a-n)^2 <= b)";
    throw Error(ErrorCode::level_out_of_range, os.str());
  }
  const JacobiExponents s = rm2_exponents(d, n);
  const double sp = s.sp.real();
  const double sm = s.sm.real();
  const double log_one_minus_y = std::numbers::ln2 - log1pexp(2.0 * x);
  const double log_one_plus_y = std::numbers::ln2 - log1pexp(-2.0 * x);
  const double poly = jacobi({n, s.sp, s.sm}, Complex(std::tanh(x), 0.0)).real();
  double log_amp = 0.0;
  if (picture == Picture::hermitian) {
    log_amp = 0.5 * sp * log_one_minus_y + 0.5 * sm * log_one_plus_y;
  } else {
    log_amp = 0.5 * (sp - d.mu2) * log_one_minus_y + 0.5 * (sm - d.mu2) * log_one_plus_y + d.mu1 * x;
  }
  return std::exp(log_amp) * poly;
}

double harmonic_wavefunction(const DerivedParams& d, int n, Picture picture, double x) {
  require_family(d, Family::harmonic, "harmonic_wavefunction");
  require_level(n);
  require_finite(x);
  const double omega = d.cap_a;
  double rate = -0.5 * omega;
  if (picture == Picture::non_hermitian) rate += 0.5 * d.mu;
  return hermite(n, std::sqrt(omega) * x) * std::exp(rate * x * x);
}

WavefunctionSampler::WavefunctionSampler(const DerivedParams& d, int n, Picture picture)
    : derived_(d), level_(level_energy(d, n)), picture_(picture) {
  if (d.family == Family::rm2_hyp && !level_.valid) {
    std::ostringstream os;
    os << "rm2 level n=" << n << " is not normalizable ((a-n)^2 <= b)";
    throw Error(ErrorCode::level_out_of_range, os.str());
  }
  if (d.family != Family::rm1_trig) return;

  const double half_pi = 0.5 * std::numbers::pi;
  Complex ref = rm1_wavefunction_raw(d, n, Picture::hermitian, half_pi);
  double best = 0.0;
  Complex best_value = ref;
  for (int k = 1; k < 16; ++k) {
    const Complex v = rm1_wavefunction_raw(d, n, Picture::hermitian, std::numbers::pi * k / 16.0);
    if (std::abs(v) > best) {
      best = std::abs(v);
      best_value = v;
    }
  }
  if (std::abs(ref) < 1e-8 * best) ref = best_value;
  phase_ = ref / std::abs(ref);
}

Complex WavefunctionSampler::rotated(double x) const {
  return rm1_wavefunction_raw(derived_, level_.n, picture_, x) * std::conj(phase_);
}

double WavefunctionSampler::operator()(double x) const {
  switch (derived_.family) {
    case Family::rm1_trig: return rotated(x).real();
    case Family::rm2_hyp: return rm2_wavefunction(derived_, level_.n, picture_, x);
    case Family::harmonic: return harmonic_wavefunction(derived_, level_.n, picture_, x);
  }
  return 0.0;
}

std::vector<double> WavefunctionSampler::sample(const GridSpec& g) const {
  std::vector<double> v(g.n_interior);
  for (std::size_t i = 0; i < g.n_interior; ++i) v[i] = (*this)(g.node(i));
  return v;
}

std::vector<double> WavefunctionSampler::sample_normalized(const GridSpec& g) const {
  auto v = sample(g);
  normalize_in_place(v, g.step());
  return v;
}

double WavefunctionSampler::imaginary_residual() const {
  if (derived_.family != Family::rm1_trig) return 0.0;
  double max_re = 0.0;
  double max_im = 0.0;
  for (int j = 0; j < 64; ++j) {
    const Complex v = rotated(std::numbers::pi * (j + 0.5) / 64.0);
    max_re = std::max(max_re, std::abs(v.real()));
    max_im = std::max(max_im, std::abs(v.imag()));
  }
  return max_re > 0.0 ? max_im / max_re : 0.0;
}

void normalize_in_place(std::vector<double>& v, double step) {
  if (v.empty()) return;
  const double norm = std::sqrt(step * kernels::dot(v, v));
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(ErrorCode::invalid_argument, "cannot normalize a zero or non-finite vector");
  }
  double peak = 0.0;
  for (double x : v) peak = std::max(peak, std::abs(x));
  const std::size_t mid = v.size() / 2;
  double sign_ref = v[mid];
  if (std::abs(sign_ref) < 1e-6 * peak) {
    for (double x : v) {
      if (std::abs(x) >= 1e-3 * peak) {
        sign_ref = x;
        break;
      }
    }
  }
  const double factor = (sign_ref < 0.0 ? -1.0 : 1.0) / norm;
  for (double& x : v) x *= factor;
}

double default_half_width(const DerivedParams& d, double start) {
  if (d.family == Family::rm1_trig) return std::numbers::pi;
  const WavefunctionSampler ground(d, 0, Picture::hermitian);
  for (double half_width = start; half_width <= 400.0; half_width += 2.0) {
    double peak = 0.0;
    for (int j = 0; j <= 2000; ++j) {
      peak = std::max(peak, std::abs(ground(-half_width + half_width * j / 1000.0)));
    }
    const double edge = std::max(std::abs(ground(-half_width)), std::abs(ground(half_width)));
    if (edge < 1e-12 * peak) return half_width;
  }
  throw Error(ErrorCode::invalid_argument, "ground state does not decay within |x| <= 400");
}

double susy_factorization_residual(SusyForm form, double cap_a, double cap_b, double x) {
  if (form == SusyForm::rm1) {
    require_rm1_domain(x);
    const double cot = 1.0 / std::tan(x);
    const double csc2 = 1.0 / (std::sin(x) * std::sin(x));
    const double w = -cap_a * cot - cap_b / cap_a;
    const double w_prime = cap_a * csc2;
    const double v = cap_a * (cap_a - 1.0) * csc2 + 2.0 * cap_b * cot - cap_a * cap_a +
                     (cap_b * cap_b) / (cap_a * cap_a);
    return w * w - w_prime - v;
  }
  require_finite(x);
  const double th = std::tanh(x);
  const double sech2 = 1.0 / (std::cosh(x) * std::cosh(x));
  const double w = cap_a * th + cap_b / cap_a;
  const double w_prime = cap_a * sech2;
  const double v = -cap_a * (cap_a + 1.0) * sech2 + 2.0 * cap_b * th + cap_a * cap_a +
                   (cap_b * cap_b) / (cap_a * cap_a);
  return w * w - w_prime - v;
}

}  // namespace pseudospec
