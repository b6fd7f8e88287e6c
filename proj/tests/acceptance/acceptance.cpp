// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "oracles.hpp"
#include "pseudospec/analytic.hpp"
#include "pseudospec/jacobi.hpp"
#include "pseudospec/operators.hpp"
#include "pseudospec/params.hpp"
#include "pseudospec/verify.hpp"

using namespace pseudospec;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double budget_seconds;  // 0 means no runtime bound
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Rational q(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

const SwansonParams kT1{0.25, 0.5};
const SwansonParams kT2{0.25, 0.5};
const SwansonParams kHarmonic{0.25, 0.5};

Superpotential t1_sp() { return Superpotential::rm1(1.5, 0.125); }
Superpotential t2_sp() { return Superpotential::rm2(1.5, 0.25); }

// ---------------------------------------------------------------------------

Outcome table_reproduction() {
  Outcome o;
  std::ostringstream os;
  struct Row {
    Family family;
    Rational alpha, beta, p1, p2;
    Rational mu1, mu2, strength, cap_b, scale;
  };
  const std::vector<Row> rows = {
      {Family::rm1_trig, q(1, 4), q(1, 2), q(3, 2), q(1, 8), q(-1, 12), q(3, 2), q(12), q(1),
       q(1, 4)},
      {Family::rm1_trig, q(1, 4), q(2, 3), q(1), q(1, 2), q(-5, 2), q(5), q(36), q(24),
       q(1, 12)},
      {Family::rm1_trig, q(1, 8), q(3, 4), q(1), q(2), q(-10), q(5), q(32), q(80), q(1, 8)},
      {Family::rm2_hyp, q(1, 4), q(1, 2), q(3, 2), q(1, 4), q(-1, 6), q(-3, 2), q(24), q(2),
       q(1, 4)},
  };
  int k = 0;
  for (const Row& r : rows) {
    ++k;
    const ExactDerived e = derive_exact(r.family, r.alpha, r.beta, r.p1, r.p2);
    const bool exact = e.mu1 == r.mu1 && e.mu2 == r.mu2 && e.strength == r.strength &&
                       e.cap_b == r.cap_b && e.scale == r.scale;
    const SwansonParams p{to_double(r.alpha), to_double(r.beta)};
    const Superpotential sp = r.family == Family::rm1_trig
                                  ? Superpotential::rm1(to_double(r.p1), to_double(r.p2))
                                  : Superpotential::rm2(to_double(r.p1), to_double(r.p2));
    const DerivedParams d = derive(p, sp);
    const bool floats = std::abs(d.mu1 - to_double(r.mu1)) <= 1e-12 &&
                        std::abs(d.mu2 - to_double(r.mu2)) <= 1e-12 &&
                        std::abs(d.strength - to_double(r.strength)) <= 1e-12 &&
                        std::abs(d.cap_b - to_double(r.cap_b)) <= 1e-12 &&
                        std::abs(d.scale - to_double(r.scale)) <= 1e-12;
    if (!exact || !floats) {
      o.pass = false;
      os << "row" << k << " differs; ";
    }
  }
  const DerivedParams d1 = derive_rm1(kT1, t1_sp());
  const DerivedParams d2 = derive_rm2(kT2, t2_sp());
  const double a_expected = (-1.0 + std::sqrt(97.0)) / 2.0;
  const double dev_a = std::abs(d1.cap_a - 4.0);
  const double dev_a2 = std::abs(d2.cap_a - a_expected);
  const ExactDerived e1 = derive_exact(Family::rm1_trig, q(1, 4), q(1, 2), q(3, 2), q(1, 8));
  const bool a_exact = e1.cap_a_exact && *e1.cap_a_exact == q(4);
  if (dev_a > 1e-12 || dev_a2 > 1e-12 || !a_exact) o.pass = false;
  os << "4 rows exact; |A-4|=" << dev_a << " |a-(sqrt97-1)/2|=" << dev_a2;
  o.detail = os.str();
  return o;
}

Outcome table_audit() {
  Outcome o;
  cli::RunConfig cfg;
  cfg.format = cli::Format::json;
  cfg.format_set = true;
  std::ostringstream out, err;
  const int rc = cli::cmd_table_audit(cfg, out, err);
  const auto j = nlohmann::json::parse(out.str());
  std::set<std::string> found;
  for (const auto& cell : j.at("cells")) {
    if (cell.at("status").get<std::string>() != "MATCH") {
      found.insert("T" + std::to_string(cell.at("table").get<int>()) + "r" +
                   std::to_string(cell.at("row").get<int>()) + ":" +
                   cell.at("column").get<std::string>() + "=" +
                   cell.at("computed").get<std::string>());
    }
  }
  const std::set<std::string> expected = {"T1r4:B=24", "T2r2:a=3.7720", "T2r3:b=14/9",
                                          "T2r3:E_n/eps_n=1/2", "T2r4:b=3/2"};
  o.pass = rc == 0 && found == expected;
  std::ostringstream os;
  os << found.size() << " mismatches:";
  for (const auto& f : found) os << ' ' << f;
  o.detail = os.str();
  return o;
}

Outcome worked_example_operators() {
  Outcome o;
  const GridSpec g = GridSpec::for_family(Family::rm1_trig, 22, 0.0);
  const TridiagonalOperator H = build_H(kT1, t1_sp(), g);
  const DerivedParams d = derive_rm1(kT1, t1_sp());
  const TridiagonalOperator h = build_h(d, t1_sp(), g);
  const double step = g.step();
  double worst_drift = 0, worst_pot = 0, worst_kin = 0, worst_h = 0, worst_coeff = 0;
  int points = 0;
  auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
  for (std::size_t i = 1; i + 1 < g.n_interior; ++i, ++points) {
    const double x = g.node(i);
    const double cot = 1.0 / std::tan(x);
    const double csc2 = 1.0 / (std::sin(x) * std::sin(x));
    const double drift_ref = (18.0 * cot + 1.0) / 24.0;
    const double pot_ref = 33.0 / 16.0 * csc2 + 7.0 / 16.0 * cot - 2261.0 / 576.0;
    const double h_ref = 12.0 * csc2 + 2.0 * cot - 323.0 / 18.0;

    const double drift = (H.sup[i] - H.sub[i - 1]) * step;
    const double kinetic = -0.5 * (H.sup[i] + H.sub[i - 1]) * step * step;
    const double pot = H.diag[i] - 2.0 * kinetic / (step * step);
    const double hv = h.diag[i] - 2.0 / (step * step);
    const SwansonCoefficients c = swanson_coefficients(kT1, t1_sp(), x);

    worst_drift = std::max(worst_drift, rel(drift, drift_ref));
    worst_pot = std::max(worst_pot, rel(pot, pot_ref));
    worst_kin = std::max(worst_kin, rel(kinetic, 0.25));
    worst_h = std::max(worst_h, rel(hv, h_ref));
    worst_coeff = std::max({worst_coeff, rel(c.drift, drift_ref), rel(c.potential, pot_ref),
                            rel(c.kinetic, 0.25)});
  }
  const double worst = std::max({worst_drift, worst_pot, worst_kin, worst_h, worst_coeff});
  o.pass = points == 20 && worst <= 1e-12;
  o.detail = std::to_string(points) + " points; drift " + fmt("%.2e", worst_drift) +
             ", potential " + fmt("%.2e", worst_pot) + ", h " + fmt("%.2e", worst_h) +
             ", pointwise coefficients " + fmt("%.2e", worst_coeff);
  return o;
}

Outcome spectrum_rm1() {
  Outcome o;
  const DerivedParams d = derive_rm1(kT1, t1_sp());
  const GridSpec g = GridSpec::for_family(Family::rm1_trig, 3999, 0.0);
  const auto coarse = bisect_eigenvalues(build_h(d, t1_sp(), g), 5);
  const auto fine = bisect_eigenvalues(build_h(d, t1_sp(), g.refined()), 5);
  std::ostringstream os;
  os.precision(3);
  for (int n = 0; n < 5; ++n) {
    const double k = 4.0 + n;
    const double ref = k * k - 1.0 / (k * k) - 323.0 / 18.0;
    const double dc = std::abs(coarse[n] - ref);
    const double df = std::abs(fine[n] - ref);
    const double ratio = dc / df;
    const bool ok = dc <= 1e-3 && ratio >= 3.2 && ratio <= 4.8;
    if (!ok) o.pass = false;
    os << "n=" << n << " dev " << dc << " ratio " << std::fixed << ratio << std::defaultfloat
       << (ok ? "" : " (FAIL)") << "; ";
  }
  o.detail = os.str();
  return o;
}

Outcome spectrum_rm2() {
  Outcome o;
  const DerivedParams d = derive_rm2(kT2, t2_sp());
  const GridSpec g = GridSpec::for_family(Family::rm2_hyp, 4000, 14.0);
  const auto eps = bisect_eigenvalues(build_h(d, t2_sp(), g), 4);
  const double a = (-1.0 + std::sqrt(97.0)) / 2.0;
  const double b = 2.0;
  const double offset = 164.0 / 9.0;
  const double threshold = offset - 2.0 * b;
  std::ostringstream os;
  os.precision(3);
  for (int n = 0; n < 3; ++n) {
    const double m = a - n;
    const double ref = -m * m - b * b / (m * m) + offset;
    const double dev = std::abs(eps[n] - ref);
    if (dev > 1e-3) o.pass = false;
    os << "n=" << n << " dev " << dev << "; ";
  }
  const double m3 = a - 3.0;
  const double eps3 = -m3 * m3 - b * b / (m3 * m3) + offset;
  const auto levels = bound_levels(d, 10);
  const VerificationReport report = run_full_verification(d, t2_sp(), g, 4);
  const bool marginal = levels.size() == 4 && levels[3].marginal && !levels[2].marginal &&
                        std::abs(eps3 - threshold) < 1e-3;
  const bool excluded = report.levels.size() == 4 && !report.levels[3].gated &&
                        report.levels[0].gated && report.levels[1].gated &&
                        report.levels[2].gated;
  if (!marginal || !excluded) o.pass = false;
  os << "n=3 |eps-threshold| " << std::abs(eps3 - threshold) << " marginal "
     << (marginal ? "yes" : "no") << ", gated " << (excluded ? "no" : "yes");
  o.detail = os.str();
  return o;
}

Outcome identities() {
  Outcome o;
  std::ostringstream os;
  os.precision(4);
  struct Case {
    const char* name;
    SwansonParams p;
    Superpotential sp;
    GridSpec g;
  };
  const std::vector<Case> cases = {
      {"rm1", kT1, t1_sp(), GridSpec::for_family(Family::rm1_trig, 3999, 0.0)},
      {"rm2", kT2, t2_sp(), GridSpec::for_family(Family::rm2_hyp, 4000, 14.0)},
      {"harmonic", kHarmonic, Superpotential::harmonic(),
       GridSpec::for_family(Family::harmonic, 2000, 10.0)},
  };
  for (const Case& c : cases) {
    const double rc = conjugation_residual(c.p, c.sp, c.g) /
                      conjugation_residual(c.p, c.sp, c.g.refined());
    const double rp = pseudo_hermiticity_residual(c.p, c.sp, c.g) /
                      pseudo_hermiticity_residual(c.p, c.sp, c.g.refined());
    const bool ok = rc >= 3.2 && rc <= 4.8 && rp >= 3.2 && rp <= 4.8;
    if (!ok) o.pass = false;
    os << c.name << " ratios " << rc << "/" << rp << "; ";
  }
  const SwansonParams equal{0.2, 0.2};
  double worst = 0.0;
  for (const Case& c : cases) {
    worst = std::max({worst, conjugation_residual(equal, c.sp, c.g),
                      pseudo_hermiticity_residual(equal, c.sp, c.g)});
  }
  if (worst > 1e-12) o.pass = false;
  os << "alpha=beta max " << worst;
  o.detail = os.str();
  return o;
}

Outcome eigenfunction_residuals() {
  Outcome o;
  std::ostringstream os;
  os.precision(4);
  struct Case {
    const char* name;
    DerivedParams d;
    Superpotential sp;
    GridSpec g;
    int levels;
  };
  const Superpotential rm1_pt = Superpotential::rm1(1.5, 0.0);
  const Superpotential rm2_pt = Superpotential::rm2(1.5, 0.0);
  const std::vector<Case> cases = {
      {"rm1", derive_rm1(kT1, t1_sp()), t1_sp(),
       GridSpec::for_family(Family::rm1_trig, 2000, 0.0), 5},
      {"rm2", derive_rm2(kT2, t2_sp()), t2_sp(),
       GridSpec::for_family(Family::rm2_hyp, 2000, 14.0), 10},
      {"rm1-pt", derive_pt(kT1, rm1_pt), rm1_pt,
       GridSpec::for_family(Family::rm1_trig, 2000, 0.0), 5},
      {"rm2-pt", derive_pt(kT2, rm2_pt), rm2_pt,
       GridSpec::for_family(Family::rm2_hyp, 2000, 14.0), 10},
      {"harmonic", derive_harmonic(kHarmonic), Superpotential::harmonic(),
       GridSpec::for_family(Family::harmonic, 2000, 10.0), 4},
  };
  for (const Case& c : cases) {
    const TridiagonalOperator Hc = build_H(c.d, c.sp, c.g);
    const TridiagonalOperator Hf = build_H(c.d, c.sp, c.g.refined());
    double lo = 1e300, hi = 0.0;
    int count = 0;
    for (const LevelRecord& lv : bound_levels(c.d, c.levels)) {
      const WavefunctionSampler psi(c.d, lv.n, Picture::non_hermitian);
      const double rc = eigen_residual(Hc, psi.sample_normalized(c.g), lv.energy);
      const double rf = eigen_residual(Hf, psi.sample_normalized(c.g.refined()), lv.energy);
      const double ratio = rc / rf;
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      ++count;
      if (!(ratio >= 3.2 && ratio <= 4.8)) o.pass = false;
    }
    os << c.name << " " << count << " levels ratios [" << lo << ", " << hi << "]; ";
  }
  o.detail = os.str();
  return o;
}

Outcome eta_orthonormality() {
  Outcome o;
  const DerivedParams d = derive_rm1(kT1, t1_sp());
  const GridSpec g = GridSpec::for_family(Family::rm1_trig, 4000, 0.0);
  const DiagonalOperator eta = build_eta(kT1, t1_sp(), g);
  std::vector<std::vector<double>> psi;
  for (int n = 0; n < 4; ++n) {
    psi.push_back(WavefunctionSampler(d, n, Picture::non_hermitian).sample_normalized(g));
  }
  double worst = 0.0;
  for (int m = 0; m < 4; ++m) {
    const double gmm = eta_inner_product(psi[m], psi[m], eta, g);
    for (int n = m + 1; n < 4; ++n) {
      const double gnn = eta_inner_product(psi[n], psi[n], eta, g);
      const double gmn = eta_inner_product(psi[m], psi[n], eta, g) / std::sqrt(gmm * gnn);
      worst = std::max(worst, std::abs(gmn));
    }
  }
  o.pass = worst <= 1e-6;
  o.detail = "max |G_mn| " + fmt("%.3e", worst);
  return o;
}

Outcome pt_specializations() {
  Outcome o;
  const Superpotential sp = Superpotential::rm1(1.5, 0.0);
  const DerivedParams d = derive_pt(kT1, sp);
  const double eps0 = rm1_energy(d, 0).eps;
  const GridSpec g = GridSpec::for_family(Family::rm1_trig, 3999, 0.0);
  const double numeric = bisect_eigenvalues(build_h(d, sp, g), 1)[0];
  const bool checks = pt_check(Superpotential::rm1(1.5, 0.0)) &&
                      pt_check(Superpotential::rm2(1.5, 0.0)) &&
                      pt_check(Superpotential::harmonic()) &&
                      !pt_check(Superpotential::rm1(1.5, 0.125)) &&
                      !pt_check(Superpotential::rm2(1.5, 0.25));
  o.pass = eps0 == 0.0 && std::abs(numeric) <= 1e-4 && checks;
  o.detail = "analytic eps0 " + fmt("%g", eps0) + ", numeric eps0 " + fmt("%.3e", numeric) +
             ", pt_check " + (checks ? "ok" : "wrong");
  return o;
}

Outcome jacobi_oracle() {
  Outcome o;
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  int fallbacks = 0, degenerate = 0;
  for (int draw = 0; draw < 500; ++draw) {
    const int n = static_cast<int>(u(rng) * 9.0) % 9;
    Complex a, b, y;
    if (draw % 2 == 0) {
      // s+ + s- = -2(A + n): the conjugate pair of the rm1 eigenfunctions.
      const double cap_a = 1.0 + 7.0 * u(rng);
      const double cap_b = -5.0 + 10.0 * u(rng);
      const double im = cap_b / (cap_a + n);
      a = {-(cap_a + n), im};
      b = {-(cap_a + n), -im};
      const double x = 0.05 + (std::numbers::pi - 0.1) * u(rng);
      y = {0.0, 1.0 / std::tan(x)};
      ++degenerate;
    } else {
      a = {-4.0 + 10.0 * u(rng), -3.0 + 6.0 * u(rng)};
      b = {-4.0 + 10.0 * u(rng), -3.0 + 6.0 * u(rng)};
      y = {-2.0 + 4.0 * u(rng), -2.0 + 4.0 * u(rng)};
    }
    const auto rec = jacobi_recurrence({n, a, b}, y);
    if (!rec) ++fallbacks;
    const Complex value = rec ? *rec : jacobi({n, a, b}, y);
    const Complex ref = oracle::jacobi_hypergeometric(n, a, b, y);
    const double err = std::abs(value - ref) / std::max(std::abs(ref), 1e-300);
    worst = std::max(worst, err);
  }
  o.pass = worst <= 1e-10 && fallbacks == 0;
  o.detail = "500 draws (" + std::to_string(degenerate) + " on the degenerate line), max rel " +
             fmt("%.3e", worst) + ", recurrence fallbacks " + std::to_string(fallbacks);
  return o;
}

Outcome harmonic_cross_check() {
  Outcome o;
  const DerivedParams d = derive_harmonic(kHarmonic);
  const GridSpec g = GridSpec::for_family(Family::harmonic, 2000, 10.0);
  const auto eps = bisect_eigenvalues(build_h(d, Superpotential::harmonic(), g), 4);
  const double s = kHarmonic.scale();
  const double root = std::sqrt(1.0 - 4.0 * kHarmonic.alpha * kHarmonic.beta);
  std::ostringstream os;
  os.precision(3);
  for (int n = 0; n < 4; ++n) {
    const double ref = (2 * n + 1) * root - 1.0;
    const double dev = std::abs(s * eps[n] - ref);
    if (dev > 1e-4) o.pass = false;
    os << "n=" << n << " |dE| " << dev << (dev > 1e-4 ? " (FAIL)" : "") << "; ";
  }
  o.detail = os.str();
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "table reproduction (exact)", 1.0, table_reproduction},
      {2, "table audit", 1.0, table_audit},
      {3, "worked-example operators", 1.0, worked_example_operators},
      {4, "rm1 spectrum oracle", 10.0, spectrum_rm1},
      {5, "rm2 spectrum oracle", 10.0, spectrum_rm2},
      {6, "similarity and metric identities", 10.0, identities},
      {7, "eigenfunction residuals", 10.0, eigenfunction_residuals},
      {8, "eta-orthonormality", 0.0, eta_orthonormality},
      {9, "PT specializations", 0.0, pt_specializations},
      {10, "Jacobi hypergeometric oracle", 0.0, jacobi_oracle},
      {11, "harmonic cross-check", 0.0, harmonic_cross_check},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0.0 && seconds > c.budget_seconds) {
      out.pass = false;
      out.detail += " (over the " + fmt("%g", c.budget_seconds) + " s budget)";
    }
    if (!out.pass) ++failures;
    std::printf("%s  criterion %2d  %-34s %7.3f s  %s\n", out.pass ? "PASS" : "FAIL", c.id,
                c.title, seconds, out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
