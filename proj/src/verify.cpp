#include "pseudospec/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "pseudospec/error.hpp"
#include "pseudospec/kernels.hpp"

namespace pseudospec {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kRelTol = 1e-12;
constexpr int kMaxInverseIterations = 50;
constexpr std::size_t kLanes = 4;

struct SturmSetup {
  std::vector<double> offdiag_sq;
  double pivmin = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double abstol = 0.0;
};

void require_symmetric(const TridiagonalOperator& t) {
  const std::size_t n = t.size();
  if (n == 0 || t.sub.size() + 1 != n || t.sup.size() + 1 != n) {
    throw Error(ErrorCode::invalid_argument, "malformed tridiagonal operator");
  }
  if (!t.symmetric || t.sub != t.sup) {
    throw Error(ErrorCode::invalid_argument, "symmetric eigensolver given a non-symmetric operator");
  }
}

SturmSetup sturm_setup(const TridiagonalOperator& t) {
  const std::size_t n = t.size();
  SturmSetup s;
  s.offdiag_sq.resize(n - 1);
  double max_e2 = 1.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    s.offdiag_sq[i] = t.sub[i] * t.sub[i];
    max_e2 = std::max(max_e2, s.offdiag_sq[i]);
  }
  s.pivmin = std::numeric_limits<double>::min() * max_e2;
  s.lo = std::numeric_limits<double>::infinity();
  s.hi = -s.lo;
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(t.sub[i - 1]);
    if (i + 1 < n) radius += std::abs(t.sub[i]);
    s.lo = std::min(s.lo, t.diag[i] - radius);
    s.hi = std::max(s.hi, t.diag[i] + radius);
  }
  const double gnorm = std::max(std::abs(s.lo), std::abs(s.hi));
  s.abstol = 2.0 * kEps * gnorm;
  // Open the bracket slightly so no eigenvalue sits on it.
  s.lo -= s.abstol + kEps * std::abs(s.lo);
  s.hi += s.abstol + kEps * std::abs(s.hi);
  return s;
}

bool converged(double lo, double hi, double abstol) {
  return hi - lo <= std::max(kRelTol * std::max(std::abs(lo), std::abs(hi)), abstol);
}

// LU factors of a tridiagonal matrix with partial pivoting.
struct TridiagonalLu {
  std::vector<double> dl, d, du, du2;
  std::vector<std::size_t> ipiv;

  void factor(const TridiagonalOperator& t, double shift, double tiny) {
    const std::size_t n = t.size();
    dl = t.sub;
    du = t.sup;
    d.resize(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = t.diag[i] - shift;
    du2.assign(n >= 2 ? n - 2 : 0, 0.0);
    ipiv.resize(n);
    for (std::size_t i = 0; i < n; ++i) ipiv[i] = i;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::abs(d[i]) >= std::abs(dl[i])) {
        if (d[i] == 0.0) d[i] = tiny;
        const double fact = dl[i] / d[i];
        dl[i] = fact;
        d[i + 1] -= fact * du[i];
      } else {
        const double fact = d[i] / dl[i];
        d[i] = dl[i];
        dl[i] = fact;
        const double temp = du[i];
        du[i] = d[i + 1];
        d[i + 1] = temp - fact * d[i + 1];
        if (i + 2 < n) {
          du2[i] = du[i + 1];
          du[i + 1] = -fact * du[i + 1];
        }
        ipiv[i] = i + 1;
      }
    }
    if (d[n - 1] == 0.0) d[n - 1] = tiny;
  }

  void solve(std::vector<double>& b) const {
    const std::size_t n = d.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const std::size_t ip = ipiv[i];
      const double temp = b[2 * i + 1 - ip] - dl[i] * b[ip];
      b[i] = b[ip];
      b[i + 1] = temp;
    }
    b[n - 1] /= d[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    for (std::size_t i = n - 2; i-- > 0;) {
      b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
    }
  }
};

void scale_to_unit(std::vector<double>& v) {
  const double norm = std::sqrt(kernels::dot(v, v));
  for (double& x : v) x /= norm;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b, double sign) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - sign * b[i]));
  return m;
}

ConvergenceCheck convergence(double coarse, double fine, const Tolerances& tol,
                             bool hermitian_limit) {
  ConvergenceCheck c;
  c.coarse = coarse;
  c.fine = fine;
  c.ratio = fine > 0.0 ? coarse / fine : std::numeric_limits<double>::infinity();
  c.pass = hermitian_limit ? coarse <= tol.hermitian_limit && fine <= tol.hermitian_limit
                           : tol.ratio_ok(c.ratio);
  return c;
}

}  // namespace

int sturm_count(const TridiagonalOperator& t, double x) {
  require_symmetric(t);
  const SturmSetup s = sturm_setup(t);
  std::array<double, 1> shift{x};
  std::array<int, 1> count{};
  kernels::sturm_counts(t.diag, s.offdiag_sq, s.pivmin, shift, count);
  return count[0];
}

std::vector<double> bisect_eigenvalues(const TridiagonalOperator& t, int k) {
  require_symmetric(t);
  const std::size_t n = t.size();
  if (k < 1 || static_cast<std::size_t>(k) > n) {
    std::ostringstream os;
    os << "requested " << k << " eigenvalues of a " << n << "x" << n << " matrix";
    throw Error(ErrorCode::invalid_argument, os.str());
  }
  const SturmSetup s = sturm_setup(t);
  std::vector<double> values(k);
  // Lanes bisect independent brackets; each lane's arithmetic does not depend
  // on the others, so the result is the same however the lanes are grouped.
  for (std::size_t first = 0; first < values.size(); first += kLanes) {
    const std::size_t lanes = std::min(kLanes, values.size() - first);
    std::array<double, kLanes> lo, hi, mid;
    std::array<int, kLanes> counts{};
    lo.fill(s.lo);
    hi.fill(s.hi);
    for (int iter = 0; iter < 256; ++iter) {
      bool all_done = true;
      for (std::size_t l = 0; l < lanes; ++l) {
        mid[l] = 0.5 * (lo[l] + hi[l]);
        all_done = all_done && converged(lo[l], hi[l], s.abstol);
      }
      if (all_done) break;
      kernels::sturm_counts(t.diag, s.offdiag_sq, s.pivmin, std::span(mid.data(), lanes),
                            std::span(counts.data(), lanes));
      for (std::size_t l = 0; l < lanes; ++l) {
        if (converged(lo[l], hi[l], s.abstol)) continue;
        if (counts[l] <= static_cast<int>(first + l)) {
          lo[l] = mid[l];
        } else {
          hi[l] = mid[l];
        }
      }
    }
    for (std::size_t l = 0; l < lanes; ++l) values[first + l] = 0.5 * (lo[l] + hi[l]);
  }
  return values;
}

EigenResult solve_symmetric_tridiagonal(const TridiagonalOperator& t, int k) {
  EigenResult r;
  r.eigenvalues = bisect_eigenvalues(t, k);
  const std::size_t n = t.size();
  const SturmSetup s = sturm_setup(t);
  const double tiny = kEps * std::max({std::abs(s.lo), std::abs(s.hi), 1.0});
  TridiagonalLu lu;
  for (int j = 0; j < k; ++j) {
    const double lambda = r.eigenvalues[j];
    lu.factor(t, lambda + 1e-10 * std::max(std::abs(lambda), 1.0), tiny);
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = 1.0 + 0.5 * std::sin(0.7 * static_cast<double>(i + 1));
    scale_to_unit(b);
    bool done = false;
    int iter = 0;
    while (!done && iter < kMaxInverseIterations) {
      ++iter;
      std::vector<double> x = b;
      lu.solve(x);
      for (const auto& prev : r.eigenvectors) {
        const double c = kernels::dot(x, prev) / kernels::dot(prev, prev);
        for (std::size_t i = 0; i < n; ++i) x[i] -= c * prev[i];
      }
      scale_to_unit(x);
      if (!std::isfinite(x[0])) break;
      const double sign = kernels::dot(x, b) < 0.0 ? -1.0 : 1.0;
      done = iter > 1 && max_abs_diff(x, b, sign) < 1e-10;
      b = std::move(x);
    }
    if (!done) {
      std::ostringstream os;
      os << "inverse iteration for level " << j << " (eigenvalue " << lambda
         << ") did not converge in " << kMaxInverseIterations << " iterations";
      throw Error(ErrorCode::solver_failure, os.str());
    }
    normalize_in_place(b, t.step);
    r.eigenvectors.push_back(std::move(b));
    r.iterations.push_back(iter);
  }
  return r;
}

double eigen_residual(const TridiagonalOperator& H, std::span<const double> psi, double E) {
  if (psi.size() != H.size()) {
    throw Error(ErrorCode::invalid_argument, "eigen_residual: dimension mismatch");
  }
  const double norm2 = kernels::dot(psi, psi);
  if (!(norm2 > 0.0)) throw Error(ErrorCode::invalid_argument, "eigen_residual: zero vector");
  std::vector<double> y = H.apply(psi);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= E * psi[i];
  return std::sqrt(kernels::dot(y, y) / norm2);
}

double eta_inner_product(std::span<const double> u, std::span<const double> v,
                         const DiagonalOperator& eta, const GridSpec& g) {
  if (u.size() != v.size() || u.size() != eta.size() || u.size() != g.n_interior) {
    throw Error(ErrorCode::invalid_argument, "eta_inner_product: dimension mismatch");
  }
  const std::vector<double> w = eta.entries();
  return g.step() * kernels::weighted_dot(u, w, v);
}

bool VerificationReport::passed() const noexcept {
  if (!conjugation.pass || !pseudo_hermiticity.pass || !eta_orthogonality_pass) return false;
  for (const auto& l : levels) {
    if (!l.spectrum_pass) return false;
    if (l.gated && !l.eigen_residual.pass) return false;
  }
  return true;
}

std::map<std::string, double> VerificationReport::residuals() const {
  std::map<std::string, double> m;
  m["conjugation"] = conjugation.coarse;
  m["pseudo_hermiticity"] = pseudo_hermiticity.coarse;
  m["eta_orthogonality"] = eta_orthogonality;
  for (const auto& l : levels) {
    const std::string idx = "[" + std::to_string(l.n) + "]";
    m["eigen_residual" + idx] = l.eigen_residual.coarse;
    m["spectrum_deviation" + idx] = l.spectrum_deviation;
  }
  return m;
}

VerificationReport run_full_verification(const SwansonParams& p, const Superpotential& sp,
                                         const GridSpec& g, int levels, const Tolerances& tol) {
  return run_full_verification(derive(p, sp), sp, g, levels, tol);
}

VerificationReport run_full_verification(const DerivedParams& d, const Superpotential& sp,
                                         const GridSpec& g, int levels, const Tolerances& tol) {
  if (levels < 1) throw Error(ErrorCode::invalid_argument, "levels must be positive");
  if (d.family != sp.family()) {
    throw Error(ErrorCode::invalid_argument, "derived parameters and superpotential disagree on family");
  }
  const SwansonParams& p = d.swanson;
  validate_grid(g, sp.family());

  VerificationReport rep;
  rep.family = d.family;
  rep.swanson = p;
  rep.mu = d.mu;
  rep.grid = g;
  rep.refined_grid = g.refined();
  rep.tolerances = tol;
  rep.hermitian_limit = d.mu == 0.0;
  const GridSpec& gf = rep.refined_grid;

  rep.conjugation = convergence(conjugation_residual(p, sp, g), conjugation_residual(p, sp, gf),
                                tol, rep.hermitian_limit);
  rep.pseudo_hermiticity =
      convergence(pseudo_hermiticity_residual(p, sp, g), pseudo_hermiticity_residual(p, sp, gf),
                  tol, rep.hermitian_limit);

  const auto records = bound_levels(d, levels, tol.marginal);
  if (records.empty()) throw Error(ErrorCode::no_bound_state, "no bound levels to verify");
  const auto numeric = bisect_eigenvalues(build_h(d, sp, g), static_cast<int>(records.size()));
  const TridiagonalOperator H = build_H(d, sp, g);
  const TridiagonalOperator Hf = build_H(d, sp, gf);

  std::vector<std::vector<double>> gated_psi;
  for (std::size_t j = 0; j < records.size(); ++j) {
    const LevelRecord& rec = records[j];
    const WavefunctionSampler psi(d, rec.n, Picture::non_hermitian);
    LevelCheck lc;
    lc.n = rec.n;
    lc.eps_analytic = rec.eps;
    lc.energy_analytic = rec.energy;
    lc.eps_numeric = numeric[j];
    lc.spectrum_deviation = std::abs(numeric[j] - rec.eps);
    lc.valid = rec.valid;
    lc.marginal = rec.marginal;
    lc.gated = rec.valid && !rec.marginal;
    lc.spectrum_pass = !lc.gated || lc.spectrum_deviation <= tol.spectrum;
    auto coarse = psi.sample(g);
    lc.eigen_residual = convergence(eigen_residual(H, coarse, rec.energy),
                                    eigen_residual(Hf, psi.sample(gf), rec.energy), tol, false);
    if (lc.gated) gated_psi.push_back(std::move(coarse));
    rep.levels.push_back(lc);
  }

  const DiagonalOperator eta = build_eta(p, sp, g);
  std::vector<double> norms;
  for (const auto& v : gated_psi) norms.push_back(std::sqrt(eta_inner_product(v, v, eta, g)));
  for (std::size_t a = 0; a < gated_psi.size(); ++a) {
    for (std::size_t b = a + 1; b < gated_psi.size(); ++b) {
      const double gab = eta_inner_product(gated_psi[a], gated_psi[b], eta, g) / (norms[a] * norms[b]);
      rep.eta_orthogonality = std::max(rep.eta_orthogonality, std::abs(gab));
    }
  }
  rep.eta_orthogonality_pass = rep.eta_orthogonality <= tol.gram;
  return rep;
}

}  // namespace pseudospec
