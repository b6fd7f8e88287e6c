#include "pseudospec/operators.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "pseudospec/error.hpp"
#include "pseudospec/kernels.hpp"

namespace pseudospec {

namespace {

const double kMaxLog = std::log(std::numeric_limits<double>::max());

struct NodeData {
  std::vector<double> w;
  std::vector<double> w_prime;
  std::vector<double> omega;
};

NodeData sample_nodes(const Superpotential& sp, const GridSpec& g) {
  validate_grid(g, sp.family());
  NodeData nd;
  nd.w.resize(g.n_interior);
  nd.w_prime.resize(g.n_interior);
  nd.omega.resize(g.n_interior);
  for (std::size_t i = 0; i < g.n_interior; ++i) {
    const double x = g.node(i);
    nd.w[i] = sp.w(x);
    nd.w_prime[i] = sp.w_prime(x);
    nd.omega[i] = sp.antiderivative(x);
  }
  return nd;
}

double checked_scale(const SwansonParams& p) {
  derive_mu(p);  // throws singular_gauge
  return p.scale();
}

DiagonalOperator log_rho(const SwansonParams& p, const Superpotential& sp, const GridSpec& g,
                         double factor) {
  const double mu = derive_mu(p);
  validate_grid(g, sp.family());
  DiagonalOperator op;
  op.log_entries.resize(g.n_interior);
  for (std::size_t i = 0; i < g.n_interior; ++i) {
    const double l = -factor * mu * sp.antiderivative(g.node(i));
    if (!(std::abs(l) <= kMaxLog)) {
      std::ostringstream os;
      os.precision(17);
      os << "gauge exponent " << l << " at node " << i << " (x=" << g.node(i)
         << ") is outside the double range";
      throw Error(ErrorCode::overflow, os.str());
    }
    op.log_entries[i] = l;
  }
  return op;
}

}  // namespace

void TridiagonalOperator::apply(std::span<const double> x, std::span<double> y) const {
  kernels::tridiag_apply(sub, diag, sup, x, y);
}

std::vector<double> TridiagonalOperator::apply(std::span<const double> x) const {
  std::vector<double> y(diag.size());
  apply(x, y);
  return y;
}

TridiagonalOperator TridiagonalOperator::transpose() const {
  return {sup, diag, sub, symmetric, step};
}

double DiagonalOperator::entry(std::size_t i) const {
  const double l = log_entries.at(i);
  if (!(l <= kMaxLog)) {
    std::ostringstream os;
    os << "diagonal entry at node " << i << " overflows (log = " << l << ")";
    throw Error(ErrorCode::overflow, os.str());
  }
  return std::exp(l);
}

std::vector<double> DiagonalOperator::entries() const {
  std::vector<double> e(log_entries.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = entry(i);
  return e;
}

DiagonalOperator DiagonalOperator::inverse() const {
  DiagonalOperator inv;
  inv.log_entries.reserve(log_entries.size());
  for (double l : log_entries) inv.log_entries.push_back(-l);
  return inv;
}

double potential_v(const DerivedParams& d, const Superpotential& sp, double x) {
  const double w = sp.w(x);
  return d.coupling() * w * w - sp.w_prime(x) / d.scale + d.energy_shift;
}

double potential_v_closed_form(const DerivedParams& d, double x) {
  switch (d.family) {
    case Family::rm1_trig: {
      if (!(x > kDomainGuard && x < std::numbers::pi - kDomainGuard)) {
        throw Error(ErrorCode::domain_violation, "x is outside (0, pi)");
      }
      const double s = std::sin(x);
      return d.strength / (s * s) + 2.0 * d.cap_b / std::tan(x) + d.offset;
    }
    case Family::rm2_hyp: {
      const double c = std::cosh(x);
      return -d.strength / (c * c) + 2.0 * d.cap_b * std::tanh(x) + d.offset;
    }
    case Family::harmonic: return d.strength * x * x + d.offset;
  }
  return 0.0;
}

SwansonCoefficients swanson_coefficients(const SwansonParams& p, const Superpotential& sp,
                                         double x) {
  const double w = sp.w(x);
  return {p.scale(), 2.0 * (p.alpha - p.beta) * w,
          (1.0 + p.alpha + p.beta) * w * w - (1.0 - p.alpha + p.beta) * sp.w_prime(x)};
}

TridiagonalOperator build_h(const DerivedParams& d, const Superpotential& sp, const GridSpec& g) {
  if (d.family != sp.family()) {
    throw Error(ErrorCode::invalid_argument, "derived parameters and superpotential disagree on family");
  }
  validate_grid(g, sp.family());
  const std::size_t n = g.n_interior;
  const double h = g.step();
  const double inv_h2 = 1.0 / (h * h);
  TridiagonalOperator t;
  t.symmetric = true;
  t.step = h;
  t.diag.resize(n);
  t.sub.assign(n - 1, -inv_h2);
  t.sup.assign(n - 1, -inv_h2);
  for (std::size_t i = 0; i < n; ++i) t.diag[i] = 2.0 * inv_h2 + potential_v(d, sp, g.node(i));
  return t;
}

TridiagonalOperator build_H(const SwansonParams& p, const Superpotential& sp, const GridSpec& g) {
  const double s = checked_scale(p);
  const NodeData nd = sample_nodes(sp, g);
  const std::size_t n = g.n_interior;
  const double h = g.step();
  const double c = s / (h * h);
  const double half_drift = (p.alpha - p.beta) / h;  // 2 (alpha - beta) W / (2h)
  TridiagonalOperator t;
  t.symmetric = p.alpha == p.beta;
  t.step = h;
  t.diag.resize(n);
  t.sub.resize(n - 1);
  t.sup.resize(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = nd.w[i];
    t.diag[i] = 2.0 * c + ((1.0 + p.alpha + p.beta) * w * w -
                           (1.0 - p.alpha + p.beta) * nd.w_prime[i]);
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    t.sup[i] = -c + half_drift * nd.w[i];
    t.sub[i] = -c - half_drift * nd.w[i + 1];
  }
  return t;
}

TridiagonalOperator build_H_dagger(const SwansonParams& p, const Superpotential& sp,
                                   const GridSpec& g) {
  return build_H(p, sp, g).transpose();
}

TridiagonalOperator build_H(const DerivedParams& d, const Superpotential& sp, const GridSpec& g) {
  if (d.family != sp.family()) {
    throw Error(ErrorCode::invalid_argument, "derived parameters and superpotential disagree on family");
  }
  TridiagonalOperator t = build_H(d.swanson, sp, g);
  if (d.energy_shift != 0.0) {
    for (double& x : t.diag) x += d.scale * d.energy_shift;
  }
  return t;
}

TridiagonalOperator build_H_dagger(const DerivedParams& d, const Superpotential& sp,
                                   const GridSpec& g) {
  return build_H(d, sp, g).transpose();
}

DiagonalOperator build_rho(const SwansonParams& p, const Superpotential& sp, const GridSpec& g) {
  return log_rho(p, sp, g, 1.0);
}

DiagonalOperator build_eta(const SwansonParams& p, const Superpotential& sp, const GridSpec& g) {
  return log_rho(p, sp, g, 2.0);
}

std::array<std::vector<double>, kProbeCount> probe_vectors(const GridSpec& g) {
  std::array<std::vector<double>, kProbeCount> probes;
  const double width = g.x_max - g.x_min;
  for (int m = 1; m <= kProbeCount; ++m) {
    auto& v = probes[m - 1];
    v.resize(g.n_interior);
    for (std::size_t i = 0; i < g.n_interior; ++i) {
      const double t = (g.node(i) - g.x_min) / width;
      const double bump = std::sin(std::numbers::pi * t);
      v[i] = std::sin(m * std::numbers::pi * t) * std::pow(bump, kProbeBumpPower);
    }
  }
  return probes;
}

TridiagonalOperator conjugation_defect(const SwansonParams& p, const Superpotential& sp,
                                       const GridSpec& g) {
  const double mu = derive_mu(p);
  const NodeData nd = sample_nodes(sp, g);
  const std::size_t n = g.n_interior;
  const double h = g.step();
  const double inv_h2 = 1.0 / (h * h);
  TridiagonalOperator t;
  t.step = h;
  t.diag.resize(n);
  t.sub.resize(n - 1);
  t.sup.resize(n - 1);
  // Kinetic parts cancel exactly; the remaining diagonal is
  // [(1+a+b) W^2 - (1-a+b) W'] / s - (k W^2 - W'/s) = mu W' - mu^2 W^2.
  for (std::size_t i = 0; i < n; ++i) {
    t.diag[i] = mu * (nd.w_prime[i] - mu * nd.w[i] * nd.w[i]);
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    // log rho_i - log rho_{i+1}
    const double delta = mu * (nd.omega[i + 1] - nd.omega[i]);
    t.sup[i] = -inv_h2 * std::expm1(delta) + (mu * nd.w[i] / h) * std::exp(delta);
    t.sub[i] = -inv_h2 * std::expm1(-delta) - (mu * nd.w[i + 1] / h) * std::exp(-delta);
  }
  t.symmetric = mu == 0.0;
  return t;
}

TridiagonalOperator pseudo_hermiticity_defect(const SwansonParams& p, const Superpotential& sp,
                                              const GridSpec& g) {
  const double s = checked_scale(p);
  const double mu = derive_mu(p);
  const NodeData nd = sample_nodes(sp, g);
  const DiagonalOperator eta = build_eta(p, sp, g);
  const std::size_t n = g.n_interior;
  const double h = g.step();
  const double c = s / (h * h);
  const double half_drift = (p.alpha - p.beta) / h;
  TridiagonalOperator t;
  t.step = h;
  t.diag.assign(n, 0.0);
  t.sub.resize(n - 1);
  t.sup.resize(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    // (H^T eta - eta H)_{i,i+1} = eta_i [H_{i+1,i} e^{D} - H_{i,i+1}],
    // D = log eta_{i+1} - log eta_i.
    const double log_gap = -2.0 * mu * (nd.omega[i + 1] - nd.omega[i]);
    const double h_low = -c - half_drift * nd.w[i + 1];
    const double asym = -half_drift * (nd.w[i + 1] + nd.w[i]);  // H_{i+1,i} - H_{i,i+1}
    const double value = eta.entry(i) * (h_low * std::expm1(log_gap) + asym);
    t.sup[i] = value;
    t.sub[i] = -value;
  }
  t.symmetric = mu == 0.0;
  return t;
}

double probe_residual(const TridiagonalOperator& defect, const GridSpec& g) {
  if (defect.size() != g.n_interior) {
    throw Error(ErrorCode::invalid_argument, "defect operator does not match the grid");
  }
  double worst = 0.0;
  std::vector<double> y(g.n_interior);
  for (const auto& v : probe_vectors(g)) {
    defect.apply(v, y);
    const double ratio = std::sqrt(kernels::dot(y, y) / kernels::dot(v, v));
    worst = std::max(worst, ratio);
  }
  return worst;
}

double conjugation_residual(const SwansonParams& p, const Superpotential& sp, const GridSpec& g) {
  return probe_residual(conjugation_defect(p, sp, g), g);
}

double pseudo_hermiticity_residual(const SwansonParams& p, const Superpotential& sp,
                                   const GridSpec& g) {
  return probe_residual(pseudo_hermiticity_defect(p, sp, g), g);
}

}  // namespace pseudospec
