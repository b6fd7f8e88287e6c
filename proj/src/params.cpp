#include "pseudospec/params.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "pseudospec/error.hpp"

namespace pseudospec {

namespace {

void require_family(const Superpotential& sp, Family expected, std::string_view op) {
  if (sp.family() != expected) {
    std::ostringstream os;
    os << op << " needs a " << to_string(expected) << " superpotential, got "
       << to_string(sp.family());
    throw Error(ErrorCode::invalid_argument, os.str());
  }
}

double positive_root_rm1(double strength) { return 0.5 + 0.5 * std::sqrt(1.0 + 4.0 * strength); }
double positive_root_rm2(double strength) { return -0.5 + 0.5 * std::sqrt(1.0 + 4.0 * strength); }

std::optional<std::int64_t> isqrt(std::int64_t v) {
  if (v < 0) return std::nullopt;
  auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(v))));
  for (std::int64_t c = std::max<std::int64_t>(r - 1, 0); c <= r + 1; ++c) {
    if (c * c == v) return c;
  }
  return std::nullopt;
}

}  // namespace

bool ConstraintReport::admissible() const noexcept { return first_failure() == nullptr; }

const ConstraintFlag* ConstraintReport::first_failure() const noexcept {
  for (const auto& f : flags) {
    if (!f.pass) return &f;
  }
  return nullptr;
}

std::optional<bool> ConstraintReport::get(std::string_view name) const noexcept {
  for (const auto& f : flags) {
    if (f.name == name) return f.pass;
  }
  return std::nullopt;
}

std::uint32_t ConstraintReport::mask() const noexcept {
  std::uint32_t m = 0;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (flags[i].pass) m |= (1u << i);
  }
  return m;
}

double DerivedParams::coupling() const noexcept {
  const double s = swanson.scale();
  return (1.0 - 4.0 * swanson.alpha * swanson.beta) / (s * s);
}

double derive_mu(const SwansonParams& p) {
  const double s = p.scale();
  if (s == 0.0) {
    std::ostringstream os;
    os << "alpha + beta = 1 makes the gauge transformation singular (alpha=" << p.alpha
       << ", beta=" << p.beta << ")";
    throw Error(ErrorCode::singular_gauge, os.str());
  }
  return (p.alpha - p.beta) / s;
}

ConstraintReport check_constraints(const SwansonParams& p, const Superpotential& sp) {
  ConstraintReport report;
  auto add = [&](std::string_view name, bool pass) {
    report.flags.push_back({std::string(name), pass});
  };
  const double s = p.scale();
  const double g = 1.0 - 4.0 * p.alpha * p.beta;
  add(constraint::sum_below_one, p.alpha + p.beta < 1.0);
  add(constraint::product_below_quarter, 4.0 * p.alpha * p.beta < 1.0);

  switch (sp.family()) {
    case Family::rm1_trig: {
      add(constraint::alpha_below_beta, p.alpha < p.beta);
      add(constraint::a1_lower_bound, g > 0.0 && sp.p1() > s / g);
      break;
    }
    case Family::rm2_hyp: {
      const double a2 = sp.p1();
      const double b2 = sp.p2();
      add(constraint::alpha_below_beta, p.alpha < p.beta);
      add(constraint::b2_below_a2_squared, b2 < a2 * a2);
      bool dominates = false;
      bool b_small = false;
      if (s != 0.0) {
        const double mu = (p.alpha - p.beta) / s;
        dominates = std::abs(a2 * mu) > std::abs((b2 / a2) * mu);
        const double chi = (a2 * a2 * g + a2 * s) / (s * s);
        if (1.0 + 4.0 * chi >= 0.0) {
          const double a = positive_root_rm2(chi);
          const double b = b2 * g / (s * s);
          b_small = a > 0.0 && b < a * a;
        }
      }
      add(constraint::mu2_dominates_mu1, dominates);
      add(constraint::b_below_a_squared, b_small);
      break;
    }
    case Family::harmonic:
      break;
  }
  return report;
}

DerivedParams derive_rm1(const SwansonParams& p, const Superpotential& sp) {
  require_family(sp, Family::rm1_trig, "derive_rm1");
  DerivedParams d;
  d.family = Family::rm1_trig;
  d.swanson = p;
  d.p1 = sp.p1();
  d.p2 = sp.p2();
  d.mu = derive_mu(p);
  d.scale = p.scale();
  d.constraints = check_constraints(p, sp);

  const double a1 = sp.p1();
  const double b1 = sp.p2();
  const double s = d.scale;
  const double g = 1.0 - 4.0 * p.alpha * p.beta;
  d.mu1 = (b1 / a1) * d.mu;
  d.mu2 = -a1 * d.mu;
  d.strength = (a1 * a1 * g - a1 * s) / (s * s);
  if (!(d.strength > 0.0)) {
    std::ostringstream os;
    os << "sigma = " << d.strength << " <= 0: the rm1 potential has no bound states";
    throw Error(ErrorCode::no_bound_state, os.str());
  }
  d.cap_a = positive_root_rm1(d.strength);
  d.cap_b = b1 * g / (s * s);
  d.offset = -(a1 * a1 - (b1 * b1) / (a1 * a1)) * d.coupling();
  return d;
}

DerivedParams derive_rm2(const SwansonParams& p, const Superpotential& sp) {
  require_family(sp, Family::rm2_hyp, "derive_rm2");
  DerivedParams d;
  d.family = Family::rm2_hyp;
  d.swanson = p;
  d.p1 = sp.p1();
  d.p2 = sp.p2();
  d.mu = derive_mu(p);
  d.scale = p.scale();
  d.constraints = check_constraints(p, sp);

  const double a2 = sp.p1();
  const double b2 = sp.p2();
  const double s = d.scale;
  const double g = 1.0 - 4.0 * p.alpha * p.beta;
  d.mu1 = (b2 / a2) * d.mu;
  d.mu2 = a2 * d.mu;
  d.strength = (a2 * a2 * g + a2 * s) / (s * s);
  if (!(1.0 + 4.0 * d.strength >= 0.0) || !(positive_root_rm2(d.strength) > 0.0)) {
    std::ostringstream os;
    os << "chi = " << d.strength << " gives no positive a: the rm2 well has no bound states";
    throw Error(ErrorCode::no_bound_state, os.str());
  }
  d.cap_a = positive_root_rm2(d.strength);
  d.cap_b = b2 * g / (s * s);
  if (!(d.cap_b < d.cap_a * d.cap_a)) {
    std::ostringstream os;
    os << "b = " << d.cap_b << " >= a^2 = " << d.cap_a * d.cap_a;
    throw Error(ErrorCode::constraint_violation, os.str());
  }
  d.offset = (a2 * a2 + (b2 * b2) / (a2 * a2)) * d.coupling();
  return d;
}

DerivedParams derive_harmonic(const SwansonParams& p) {
  DerivedParams d;
  d.family = Family::harmonic;
  d.swanson = p;
  d.mu = derive_mu(p);
  d.scale = p.scale();
  d.constraints = check_constraints(p, Superpotential::harmonic());
  const double g = 1.0 - 4.0 * p.alpha * p.beta;
  if (!(g > 0.0)) {
    std::ostringstream os;
    os << "4 alpha beta = " << 4.0 * p.alpha * p.beta
       << " >= 1 gives a complex oscillator frequency";
    throw Error(ErrorCode::no_bound_state, os.str());
  }
  d.strength = g / (d.scale * d.scale);
  d.cap_a = std::sqrt(d.strength);
  d.offset = -1.0 / d.scale;
  return d;
}

DerivedParams derive(const SwansonParams& p, const Superpotential& sp) {
  switch (sp.family()) {
    case Family::rm1_trig: return derive_rm1(p, sp);
    case Family::rm2_hyp: return derive_rm2(p, sp);
    case Family::harmonic: return derive_harmonic(p);
  }
  throw Error(ErrorCode::invalid_argument, "unknown family");
}

DerivedParams derive_pt(const SwansonParams& p, const Superpotential& sp) {
  if (sp.family() == Family::harmonic || sp.p2() != 0.0) {
    throw Error(ErrorCode::invalid_argument, "PT specializations need an rm1 or rm2 superpotential with B = 0");
  }
  DerivedParams d = derive(p, sp);
  const double a2 = d.cap_a * d.cap_a;
  const double pt_offset = sp.family() == Family::rm1_trig ? -a2 : a2;
  d.energy_shift = pt_offset - d.offset;
  d.offset = pt_offset;
  return d;
}

// Exact path ---------------------------------------------------------------

double to_double(const Rational& r) noexcept {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::optional<Rational> parse_rational(std::string_view text) {
  auto parse_int = [](std::string_view s) -> std::optional<std::int64_t> {
    std::int64_t v = 0;
    if (s.empty()) return std::nullopt;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
  };
  try {
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      auto num = parse_int(text.substr(0, slash));
      auto den = parse_int(text.substr(slash + 1));
      if (!num || !den || *den == 0) return std::nullopt;
      return Rational(*num, *den);
    }
    bool negative = false;
    std::string_view body = text;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
      negative = body.front() == '-';
      body.remove_prefix(1);
    }
    const auto dot = body.find('.');
    std::string digits(body.substr(0, dot));
    std::int64_t den = 1;
    if (dot != std::string_view::npos) {
      const auto frac = body.substr(dot + 1);
      if (frac.size() > 15) return std::nullopt;
      digits += frac;
      for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
      return std::nullopt;
    }
    auto num = parse_int(digits);
    if (!num) return std::nullopt;
    return Rational(negative ? -*num : *num, den);
  } catch (const boost::bad_rational&) {
    return std::nullopt;
  }
}

std::optional<Rational> exact_sqrt(const Rational& r) {
  if (r < Rational(0)) return std::nullopt;
  auto n = isqrt(r.numerator());
  auto d = isqrt(r.denominator());
  if (!n || !d) return std::nullopt;
  return Rational(*n, *d);
}

ExactDerived derive_exact(Family family, Rational alpha, Rational beta, Rational p1,
                          Rational p2) {
  if (family == Family::harmonic) {
    throw Error(ErrorCode::invalid_argument, "exact derivation covers rm1 and rm2 only");
  }
  ExactDerived e;
  e.family = family;
  e.scale = Rational(1) - alpha - beta;
  if (e.scale == Rational(0)) {
    throw Error(ErrorCode::singular_gauge, "alpha + beta = 1 makes the gauge transformation singular");
  }
  const Rational g = Rational(1) - 4 * alpha * beta;
  const Rational s2 = e.scale * e.scale;
  e.alpha_plus_beta = alpha + beta;
  e.four_alpha_beta = 4 * alpha * beta;
  e.mu = (alpha - beta) / e.scale;
  e.mu1 = (p2 / p1) * e.mu;
  e.cap_b = p2 * g / s2;
  if (family == Family::rm1_trig) {
    e.mu2 = -p1 * e.mu;
    e.strength = (p1 * p1 * g - p1 * e.scale) / s2;
  } else {
    e.mu2 = p1 * e.mu;
    e.strength = (p1 * p1 * g + p1 * e.scale) / s2;
  }
  e.discriminant = Rational(1) + 4 * e.strength;
  const Rational half(1, 2);
  const Rational sign = family == Family::rm1_trig ? Rational(1) : Rational(-1);
  if (auto root = exact_sqrt(e.discriminant)) {
    e.cap_a_exact = sign * half + half * *root;
    e.cap_a = to_double(*e.cap_a_exact);
  } else {
    e.cap_a = to_double(sign * half) + 0.5 * std::sqrt(to_double(e.discriminant));
  }
  return e;
}

}  // namespace pseudospec
