#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "pseudospec/analytic.hpp"
#include "pseudospec/error.hpp"
#include "pseudospec/operators.hpp"
#include "pseudospec/table_audit.hpp"
#include "svg_plot.hpp"

namespace pseudospec::cli {

using nlohmann::json;
using pseudospec::to_string;

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return exit_parse;
    case ErrorCode::solver_failure:
    case ErrorCode::overflow: return exit_solver;
    default: return exit_constraints;
  }
}

double json_number(const json& j, const char* key) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    if (auto v = parse_number(j.get<std::string>())) return *v;
  }
  throw Error(ErrorCode::invalid_argument, std::string("'") + key + "' must be a number or \"p/q\"");
}

long json_integer(const json& j, const char* key) {
  const double v = json_number(j, key);
  if (v != std::floor(v) || v < 0.0 || v > 1e9) {
    throw Error(ErrorCode::invalid_argument, std::string("'") + key + "' must be a nonnegative integer");
  }
  return static_cast<long>(v);
}

std::string json_string(const json& j, const char* key) {
  if (!j.is_string()) throw Error(ErrorCode::invalid_argument, std::string("'") + key + "' must be a string");
  return j.get<std::string>();
}

json constraints_json(const ConstraintReport& r) {
  json a = json::array();
  for (const auto& f : r.flags) a.push_back({{"name", f.name}, {"pass", f.pass}});
  return a;
}

std::string constraints_line(const ConstraintReport& r) {
  std::string s;
  for (const auto& f : r.flags) {
    if (!s.empty()) s += "; ";
    s += f.name + "=" + (f.pass ? "pass" : "fail");
  }
  return s;
}

void csv_header(std::ostream& os, const char* command, const RunConfig& cfg,
                const ConstraintReport* constraints) {
  os << "# schema: " << kSchema << "\n";
  os << "# command: " << command << "\n";
  os << "# config: " << to_json(cfg).dump() << "\n";
  if (constraints) os << "# constraints: " << constraints_line(*constraints) << "\n";
}

json json_envelope(const char* command, const RunConfig& cfg, const ConstraintReport* constraints) {
  json j;
  j["schema"] = kSchema;
  j["command"] = command;
  j["config"] = to_json(cfg);
  if (constraints) j["constraints"] = constraints_json(*constraints);
  return j;
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.output, std::ios::binary);
  if (!f) throw Error(ErrorCode::invalid_argument, "cannot open output file '" + cfg.output + "'");
  f << text;
}

// Checks the model's constraint set; prints the first failure.
bool admissible_or_report(const ConstraintReport& r, std::ostream& err) {
  if (const auto* f = r.first_failure()) {
    err << "error: constraint failed: " << f->name << "\n";
    return false;
  }
  return true;
}

json check_json(const ConvergenceCheck& c) {
  return {{"coarse", c.coarse}, {"fine", c.fine}, {"ratio", c.ratio}, {"pass", c.pass}};
}

json grid_json(const GridSpec& g) {
  return {{"x_min", g.x_min}, {"x_max", g.x_max}, {"n_interior", g.n_interior}, {"step", g.step()}};
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_for(e.code());
  }
}

}  // namespace

const char* to_string(Model m) noexcept {
  switch (m) {
    case Model::rm1: return "rm1";
    case Model::rm2: return "rm2";
    case Model::rm1_pt: return "rm1-pt";
    case Model::rm2_pt: return "rm2-pt";
    case Model::harmonic: return "harmonic";
  }
  return "unknown";
}

std::optional<Model> parse_model(const std::string& text) {
  for (Model m : {Model::rm1, Model::rm2, Model::rm1_pt, Model::rm2_pt, Model::harmonic}) {
    if (text == to_string(m)) return m;
  }
  return std::nullopt;
}

Family RunConfig::family() const noexcept {
  switch (model) {
    case Model::rm1:
    case Model::rm1_pt: return Family::rm1_trig;
    case Model::rm2:
    case Model::rm2_pt: return Family::rm2_hyp;
    case Model::harmonic: return Family::harmonic;
  }
  return Family::harmonic;
}

Superpotential RunConfig::superpotential() const {
  switch (model) {
    case Model::rm1: return Superpotential::rm1(a1, b1);
    case Model::rm1_pt: return Superpotential::rm1(a1, 0.0);
    case Model::rm2:
    case Model::rm2_pt: {
      const double b = model == Model::rm2_pt ? 0.0 : b2;
      if (a2 > 0.0 && !(b < a2 * a2)) {
        throw Error(ErrorCode::constraint_violation,
                    "constraint failed: " + std::string(constraint::b2_below_a2_squared));
      }
      return Superpotential::rm2(a2, b);
    }
    case Model::harmonic: return Superpotential::harmonic();
  }
  return Superpotential::harmonic();
}

std::size_t RunConfig::resolved_n() const noexcept {
  if (n_interior > 0) return n_interior;
  switch (family()) {
    case Family::rm1_trig: return 3999;
    case Family::rm2_hyp: return 4000;
    case Family::harmonic: return 2000;
  }
  return 2000;
}

Format RunConfig::resolved_format() const noexcept {
  if (format_set) return format;
  if (output.size() >= 5 && output.compare(output.size() - 5, 5, ".json") == 0) return Format::json;
  return format;
}

std::optional<double> parse_number(const std::string& text) {
  if (auto r = parse_rational(text)) return to_double(*r);
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

void apply_json(const json& j, RunConfig& cfg) {
  if (!j.is_object()) throw Error(ErrorCode::invalid_argument, "config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "schema") {
      continue;
    } else if (key == "model") {
      auto m = parse_model(json_string(value, "model"));
      if (!m) throw Error(ErrorCode::invalid_argument, "unknown model '" + value.get<std::string>() + "'");
      cfg.model = *m;
    } else if (key == "alpha") {
      cfg.alpha = json_number(value, "alpha");
    } else if (key == "beta") {
      cfg.beta = json_number(value, "beta");
    } else if (key == "A1") {
      cfg.a1 = json_number(value, "A1");
    } else if (key == "B1") {
      cfg.b1 = json_number(value, "B1");
    } else if (key == "A2") {
      cfg.a2 = json_number(value, "A2");
    } else if (key == "B2") {
      cfg.b2 = json_number(value, "B2");
    } else if (key == "n") {
      cfg.n_interior = static_cast<std::size_t>(json_integer(value, "n"));
    } else if (key == "L") {
      cfg.half_width = json_number(value, "L");
    } else if (key == "levels") {
      cfg.levels = static_cast<int>(json_integer(value, "levels"));
    } else if (key == "output") {
      cfg.output = json_string(value, "output");
    } else if (key == "plot") {
      cfg.plot = json_string(value, "plot");
    } else if (key == "format") {
      const std::string f = json_string(value, "format");
      if (f != "csv" && f != "json") throw Error(ErrorCode::invalid_argument, "format must be csv or json");
      cfg.format = f == "json" ? Format::json : Format::csv;
      cfg.format_set = true;
    } else if (key == "tolerances") {
      if (!value.is_object()) throw Error(ErrorCode::invalid_argument, "'tolerances' must be an object");
      for (const auto& [tk, tv] : value.items()) {
        Tolerances& t = cfg.tolerances;
        if (tk == "spectrum") t.spectrum = json_number(tv, "spectrum");
        else if (tk == "ratio_lo") t.ratio_lo = json_number(tv, "ratio_lo");
        else if (tk == "ratio_hi") t.ratio_hi = json_number(tv, "ratio_hi");
        else if (tk == "gram") t.gram = json_number(tv, "gram");
        else if (tk == "hermitian_limit") t.hermitian_limit = json_number(tv, "hermitian_limit");
        else if (tk == "marginal") t.marginal = json_number(tv, "marginal");
        else throw Error(ErrorCode::invalid_argument, "unknown tolerance '" + tk + "'");
      }
    } else if (key == "scan") {
      if (!value.is_object()) throw Error(ErrorCode::invalid_argument, "'scan' must be an object");
      for (const auto& [sk, sv] : value.items()) {
        ScanRange& s = cfg.scan;
        if (sk == "alpha_min") s.alpha_min = json_number(sv, "alpha_min");
        else if (sk == "alpha_max") s.alpha_max = json_number(sv, "alpha_max");
        else if (sk == "beta_min") s.beta_min = json_number(sv, "beta_min");
        else if (sk == "beta_max") s.beta_max = json_number(sv, "beta_max");
        else if (sk == "resolution") s.resolution = static_cast<int>(json_integer(sv, "resolution"));
        else throw Error(ErrorCode::invalid_argument, "unknown scan key '" + sk + "'");
      }
    } else {
      throw Error(ErrorCode::invalid_argument, "unknown config key '" + key + "'");
    }
  }
  if (cfg.levels < 1) throw Error(ErrorCode::invalid_argument, "levels must be at least 1");
  if (cfg.scan.resolution < 2) throw Error(ErrorCode::invalid_argument, "scan resolution must be at least 2");
  if (cfg.half_width < 0.0) throw Error(ErrorCode::invalid_argument, "L must be positive");
}

json to_json(const RunConfig& cfg) {
  json j;
  j["model"] = to_string(cfg.model);
  j["alpha"] = cfg.alpha;
  j["beta"] = cfg.beta;
  switch (cfg.family()) {
    case Family::rm1_trig:
      j["A1"] = cfg.a1;
      j["B1"] = cfg.model == Model::rm1_pt ? 0.0 : cfg.b1;
      break;
    case Family::rm2_hyp:
      j["A2"] = cfg.a2;
      j["B2"] = cfg.model == Model::rm2_pt ? 0.0 : cfg.b2;
      break;
    case Family::harmonic: break;
  }
  j["n"] = cfg.resolved_n();
  j["L"] = cfg.half_width;
  j["levels"] = cfg.levels;
  const Tolerances& t = cfg.tolerances;
  j["tolerances"] = {{"spectrum", t.spectrum}, {"ratio_lo", t.ratio_lo}, {"ratio_hi", t.ratio_hi},
                     {"gram", t.gram}, {"hermitian_limit", t.hermitian_limit},
                     {"marginal", t.marginal}};
  j["scan"] = {{"alpha_min", cfg.scan.alpha_min}, {"alpha_max", cfg.scan.alpha_max},
               {"beta_min", cfg.scan.beta_min}, {"beta_max", cfg.scan.beta_max},
               {"resolution", cfg.scan.resolution}};
  return j;
}

DerivedParams derive_model(const RunConfig& cfg) {
  const Superpotential sp = cfg.superpotential();
  if (cfg.model == Model::rm1_pt || cfg.model == Model::rm2_pt) return derive_pt(cfg.swanson(), sp);
  return derive(cfg.swanson(), sp);
}

GridSpec resolve_grid(const RunConfig& cfg, const DerivedParams& d) {
  const double half_width =
      d.family == Family::rm1_trig ? 0.0 : (cfg.half_width > 0.0 ? cfg.half_width : default_half_width(d));
  return GridSpec::for_family(d.family, cfg.resolved_n(), half_width);
}

std::optional<Rational> rationalize(double x) {
  if (!std::isfinite(x) || std::abs(x) > 1e12) return std::nullopt;
  // Continued-fraction convergents.
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  for (int i = 0; i < 40; ++i) {
    const double a = std::floor(r);
    const auto ai = static_cast<std::int64_t>(a);
    const std::int64_t p2 = ai * p1 + p0;
    const std::int64_t q2 = ai * q1 + q0;
    if (q2 > 1000000) return std::nullopt;
    if (static_cast<double>(p2) / static_cast<double>(q2) == x) return Rational(p2, q2);
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    const double frac = r - a;
    if (frac == 0.0) return std::nullopt;
    r = 1.0 / frac;
  }
  return std::nullopt;
}

unsigned worker_count() {
  if (const char* env = std::getenv("PSEUDOSPEC_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(std::min(v, 1024L));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// derive ---------------------------------------------------------------------

int cmd_derive(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Superpotential sp = cfg.superpotential();
    const ConstraintReport constraints = check_constraints(cfg.swanson(), sp);
    json j = json_envelope("derive", cfg, &constraints);
    const bool ok = admissible_or_report(constraints, err);
    j["admissible"] = ok;
    if (!ok) {
      emit(cfg, j.dump(2) + "\n", out);
      return static_cast<int>(exit_constraints);
    }
    const DerivedParams d = derive_model(cfg);
    const Family f = d.family;
    const char* strength = f == Family::rm1_trig ? "sigma" : f == Family::rm2_hyp ? "chi" : "omega_sq";
    const char* cap_a = f == Family::rm1_trig ? "A" : f == Family::rm2_hyp ? "a" : "omega";
    const char* cap_b = f == Family::rm1_trig ? "B" : "b";
    json dj = {{"family", to_string(f)}, {"scale", d.scale}, {"mu", d.mu}, {"mu1", d.mu1},
               {"mu2", d.mu2}, {strength, d.strength}, {cap_a, d.cap_a}, {"offset", d.offset},
               {"energy_shift", d.energy_shift}, {"pt_symmetric", pt_check(sp)}};
    if (f != Family::harmonic) dj[cap_b] = d.cap_b;
    j["derived"] = dj;

    if (f != Family::harmonic) {
      const auto ra = rationalize(cfg.alpha), rb = rationalize(cfg.beta);
      const auto rp1 = rationalize(sp.p1()), rp2 = rationalize(sp.p2());
      if (ra && rb && rp1 && rp2) {
        try {
          const ExactDerived e = derive_exact(f, *ra, *rb, *rp1, *rp2);
          json ej = {{"scale", to_string(e.scale)}, {"mu", to_string(e.mu)},
                     {"mu1", to_string(e.mu1)}, {"mu2", to_string(e.mu2)},
                     {strength, to_string(e.strength)}, {cap_b, to_string(e.cap_b)}};
          if (e.cap_a_exact) ej[cap_a] = to_string(*e.cap_a_exact);
          j["exact"] = ej;
        } catch (const std::exception&) {
          // 64-bit overflow in the exact path; the floating-point block stands.
        }
      }
    }

    std::ostringstream os;
    if (cfg.resolved_format() == Format::json) {
      os << j.dump(2) << "\n";
    } else {
      os << "model        " << to_string(cfg.model) << "\n";
      os << "alpha, beta  " << fmt17(cfg.alpha) << ", " << fmt17(cfg.beta) << "\n";
      for (const auto& [k, v] : dj.items()) {
        if (v.is_number()) {
          os << k << std::string(k.size() < 13 ? 13 - k.size() : 1, ' ') << fmt17(v.get<double>());
          if (j.contains("exact") && j["exact"].contains(k)) os << "  (" << j["exact"][k].get<std::string>() << ")";
          os << "\n";
        }
      }
      os << "pt_symmetric " << (pt_check(sp) ? "true" : "false") << "\n";
      for (const auto& flag : constraints.flags) {
        os << "[" << (flag.pass ? "pass" : "FAIL") << "] " << flag.name << "\n";
      }
      os << "\n" << j.dump(2) << "\n";
    }
    emit(cfg, os.str(), out);
    return static_cast<int>(exit_ok);
  });
}

// spectrum -------------------------------------------------------------------

int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Superpotential sp = cfg.superpotential();
    const ConstraintReport constraints = check_constraints(cfg.swanson(), sp);
    if (!admissible_or_report(constraints, err)) return static_cast<int>(exit_constraints);
    const DerivedParams d = derive_model(cfg);
    const GridSpec g = resolve_grid(cfg, d);
    const auto levels = bound_levels(d, cfg.levels, cfg.tolerances.marginal);
    if (levels.empty()) throw Error(ErrorCode::no_bound_state, "model has no bound levels");
    const auto numeric = bisect_eigenvalues(build_h(d, sp, g), static_cast<int>(levels.size()));
    const TridiagonalOperator H = build_H(d, sp, g);

    json rows = json::array();
    std::ostringstream csv;
    csv_header(csv, "spectrum", cfg, &constraints);
    csv << "# grid: x_min=" << fmt17(g.x_min) << " x_max=" << fmt17(g.x_max)
        << " n_interior=" << g.n_interior << "\n";
    csv << "n,eps_analytic,E_analytic,eps_numeric,abs_dev,eigen_residual,valid,marginal\n";
    for (std::size_t j = 0; j < levels.size(); ++j) {
      const LevelRecord& l = levels[j];
      const WavefunctionSampler psi(d, l.n, Picture::non_hermitian);
      const double res = eigen_residual(H, psi.sample(g), l.energy);
      const double dev = std::abs(numeric[j] - l.eps);
      csv << l.n << "," << fmt17(l.eps) << "," << fmt17(l.energy) << "," << fmt17(numeric[j]) << ","
          << fmt17(dev) << "," << fmt17(res) << "," << (l.valid ? "true" : "false") << ","
          << (l.marginal ? "true" : "false") << "\n";
      rows.push_back({{"n", l.n}, {"eps_analytic", l.eps}, {"E_analytic", l.energy},
                      {"eps_numeric", numeric[j]}, {"abs_dev", dev}, {"eigen_residual", res},
                      {"valid", l.valid}, {"marginal", l.marginal}});
    }
    if (cfg.resolved_format() == Format::json) {
      json j = json_envelope("spectrum", cfg, &constraints);
      j["grid"] = grid_json(g);
      j["rows"] = rows;
      emit(cfg, j.dump(2) + "\n", out);
    } else {
      emit(cfg, csv.str(), out);
    }
    if (!cfg.plot.empty()) write_svg_plot(cfg.plot, d, sp, g, levels);
    return static_cast<int>(exit_ok);
  });
}

// verify ---------------------------------------------------------------------

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Superpotential sp = cfg.superpotential();
    const ConstraintReport constraints = check_constraints(cfg.swanson(), sp);
    if (!admissible_or_report(constraints, err)) return static_cast<int>(exit_constraints);
    const DerivedParams d = derive_model(cfg);
    const GridSpec g = resolve_grid(cfg, d);
    const VerificationReport rep = run_full_verification(d, sp, g, cfg.levels, cfg.tolerances);

    json j = json_envelope("verify", cfg, &constraints);
    j["grid"] = grid_json(rep.grid);
    j["refined_grid"] = grid_json(rep.refined_grid);
    j["hermitian_limit"] = rep.hermitian_limit;
    if (rep.hermitian_limit) j["note"] = "mu = 0: eta is the identity and H is symmetric";
    j["conjugation"] = check_json(rep.conjugation);
    j["pseudo_hermiticity"] = check_json(rep.pseudo_hermiticity);
    json levels = json::array();
    for (const auto& l : rep.levels) {
      levels.push_back({{"n", l.n}, {"eps_analytic", l.eps_analytic}, {"E_analytic", l.energy_analytic},
                        {"eps_numeric", l.eps_numeric}, {"spectrum_deviation", l.spectrum_deviation},
                        {"spectrum_pass", l.spectrum_pass}, {"eigen_residual", check_json(l.eigen_residual)},
                        {"valid", l.valid}, {"marginal", l.marginal}, {"gated", l.gated}});
    }
    j["levels"] = levels;
    j["eta_orthogonality"] = {{"max_offdiag", rep.eta_orthogonality}, {"pass", rep.eta_orthogonality_pass}};
    j["residuals"] = rep.residuals();
    j["passed"] = rep.passed();
    emit(cfg, j.dump(2) + "\n", out);
    if (!rep.passed()) {
      err << "verification failed\n";
      return static_cast<int>(exit_verification);
    }
    return static_cast<int>(exit_ok);
  });
}

// table-audit ----------------------------------------------------------------

int cmd_table_audit(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto rows = audit_tables();
    std::size_t mismatches = 0;
    for (const auto& r : rows) mismatches += r.mismatches();
    if (cfg.resolved_format() == Format::json) {
      json j;
      j["schema"] = kSchema;
      j["command"] = "table-audit";
      j["rounded_column_tolerance"] = kRoundedColumnTolerance;
      json cells = json::array();
      for (const auto& r : rows) {
        for (const auto& c : r.cells) {
          cells.push_back({{"table", r.source.table}, {"row", r.source.row}, {"column", c.column},
                           {"printed", c.printed}, {"computed", c.computed},
                           {"status", c.match ? "MATCH" : "MISMATCH"}});
        }
      }
      j["cells"] = cells;
      j["mismatches"] = mismatches;
      emit(cfg, j.dump(2) + "\n", out);
    } else {
      std::ostringstream os;
      os << "# schema: " << kSchema << "\n# command: table-audit\n";
      os << "# rounded_column_tolerance: " << fmt17(kRoundedColumnTolerance) << "\n";
      os << "# mismatches: " << mismatches << "\n";
      os << "table,row,alpha,beta,column,printed,computed,status\n";
      for (const auto& r : rows) {
        for (const auto& c : r.cells) {
          os << r.source.table << "," << r.source.row << "," << r.source.alpha << "," << r.source.beta
             << "," << c.column << "," << c.printed << "," << c.computed << ","
             << (c.match ? "MATCH" : "MISMATCH") << "\n";
        }
      }
      emit(cfg, os.str(), out);
    }
    return static_cast<int>(exit_ok);
  });
}

// scan -----------------------------------------------------------------------

namespace {

struct ScanCell {
  double alpha = 0.0;
  double beta = 0.0;
  std::uint32_t mask = 0;
  bool admissible = false;
  double eps0 = std::nan("");
};

ScanCell scan_cell(const RunConfig& base, const Superpotential& sp, double alpha, double beta) {
  ScanCell c;
  c.alpha = alpha;
  c.beta = beta;
  RunConfig cfg = base;
  cfg.alpha = alpha;
  cfg.beta = beta;
  const ConstraintReport r = check_constraints(cfg.swanson(), sp);
  c.mask = r.mask();
  if (!r.admissible()) return c;
  try {
    const DerivedParams d = derive_model(cfg);
    c.eps0 = level_energy(d, 0, cfg.tolerances.marginal).eps;
    c.admissible = true;
  } catch (const Error&) {
    c.admissible = false;
  }
  return c;
}

}  // namespace

int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Superpotential sp = cfg.superpotential();
    const ScanRange& s = cfg.scan;
    if (!(s.alpha_max >= s.alpha_min) || !(s.beta_max >= s.beta_min)) {
      throw Error(ErrorCode::invalid_argument, "scan ranges must satisfy min <= max");
    }
    const int r = s.resolution;
    const std::size_t total = static_cast<std::size_t>(r) * static_cast<std::size_t>(r);
    std::vector<ScanCell> cells(total);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t k = next.fetch_add(1); k < total; k = next.fetch_add(1)) {
        const std::size_t i = k / r;
        const std::size_t j = k % r;
        const double alpha = s.alpha_min + (s.alpha_max - s.alpha_min) * static_cast<double>(i) / (r - 1);
        const double beta = s.beta_min + (s.beta_max - s.beta_min) * static_cast<double>(j) / (r - 1);
        cells[k] = scan_cell(cfg, sp, alpha, beta);
      }
    };
    const unsigned workers = std::min<std::size_t>(worker_count(), total);
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    std::size_t admissible = 0;
    for (const auto& c : cells) admissible += c.admissible ? 1 : 0;
    const ConstraintReport legend = check_constraints(cfg.swanson(), sp);

    if (cfg.resolved_format() == Format::json) {
      json j = json_envelope("scan", cfg, nullptr);
      json bits = json::array();
      for (const auto& f : legend.flags) bits.push_back(f.name);
      j["mask_bits"] = bits;
      j["admissible_cells"] = admissible;
      json arr = json::array();
      for (std::size_t k = 0; k < total; ++k) {
        const ScanCell& c = cells[k];
        arr.push_back({{"i", k / r}, {"j", k % r}, {"alpha", c.alpha}, {"beta", c.beta},
                       {"mask", c.mask}, {"admissible", c.admissible},
                       {"eps0", c.admissible ? json(c.eps0) : json(nullptr)}});
      }
      j["cells"] = arr;
      emit(cfg, j.dump(2) + "\n", out);
    } else {
      std::ostringstream os;
      csv_header(os, "scan", cfg, nullptr);
      for (std::size_t b = 0; b < legend.flags.size(); ++b) {
        os << "# mask bit " << b << ": " << legend.flags[b].name << "\n";
      }
      os << "# admissible_cells: " << admissible << " of " << total << "\n";
      os << "i,j,alpha,beta,mask,admissible,eps0\n";
      for (std::size_t k = 0; k < total; ++k) {
        const ScanCell& c = cells[k];
        os << k / r << "," << k % r << "," << fmt17(c.alpha) << "," << fmt17(c.beta) << "," << c.mask
           << "," << (c.admissible ? "true" : "false") << "," << (c.admissible ? fmt17(c.eps0) : "")
           << "\n";
      }
      emit(cfg, os.str(), out);
    }
    if (admissible == 0) err << "note: no admissible cells in the scanned region\n";
    return static_cast<int>(exit_ok);
  });
}

// command line ---------------------------------------------------------------

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized Swanson Hamiltonians: parameters, spectra and verification"};
  app.require_subcommand(1, 1);

  std::map<std::string, std::string> flags;  // json key path -> text
  std::string config_path;
  auto add_common = [&](CLI::App* sub, bool model_options) {
    sub->add_option("--config", config_path, "JSON config file (flags override its values)");
    sub->add_option("-o,--output", flags["output"], "output file (default stdout)");
    sub->add_option("--format", flags["format"], "csv or json")->check(CLI::IsMember({"csv", "json"}));
    if (!model_options) return;
    sub->add_option("--model", flags["model"], "rm1, rm2, rm1-pt, rm2-pt or harmonic");
    sub->add_option("--alpha", flags["alpha"], "alpha (decimal or p/q)");
    sub->add_option("--beta", flags["beta"], "beta (decimal or p/q)");
    sub->add_option("--A1", flags["A1"], "rm1 A1");
    sub->add_option("--B1", flags["B1"], "rm1 B1");
    sub->add_option("--A2", flags["A2"], "rm2 A2");
    sub->add_option("--B2", flags["B2"], "rm2 B2");
  };
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("-N,--points", flags["n"], "interior grid points");
    sub->add_option("-L,--half-width", flags["L"], "half-width of the truncated line (rm2, harmonic)");
    sub->add_option("--levels", flags["levels"], "number of levels");
    sub->add_option("--tol-spectrum", flags["tolerances.spectrum"], "spectrum tolerance (eps units)");
    sub->add_option("--tol-gram", flags["tolerances.gram"], "eta-Gram off-diagonal tolerance");
    sub->add_option("--ratio-lo", flags["tolerances.ratio_lo"], "lower end of the convergence ratio window");
    sub->add_option("--ratio-hi", flags["tolerances.ratio_hi"], "upper end of the convergence ratio window");
    sub->add_option("--tol-hermitian", flags["tolerances.hermitian_limit"], "residual bound when alpha = beta");
    sub->add_option("--marginal", flags["tolerances.marginal"], "marginal-level tolerance (eps units)");
  };

  auto* derive_cmd = app.add_subcommand("derive", "derived parameters and constraint flags");
  add_common(derive_cmd, true);
  auto* spectrum_cmd = app.add_subcommand("spectrum", "analytic vs numeric spectrum");
  add_common(spectrum_cmd, true);
  add_grid(spectrum_cmd);
  spectrum_cmd->add_option("--plot", flags["plot"], "write an SVG of V(x) and the lowest states");
  auto* verify_cmd = app.add_subcommand("verify", "full verification report (JSON)");
  add_common(verify_cmd, true);
  add_grid(verify_cmd);
  auto* audit_cmd = app.add_subcommand("table-audit", "recompute the published parameter tables");
  add_common(audit_cmd, false);
  auto* scan_cmd = app.add_subcommand("scan", "constraint raster over (alpha, beta)");
  add_common(scan_cmd, true);
  scan_cmd->add_option("--alpha-min", flags["scan.alpha_min"], "");
  scan_cmd->add_option("--alpha-max", flags["scan.alpha_max"], "");
  scan_cmd->add_option("--beta-min", flags["scan.beta_min"], "");
  scan_cmd->add_option("--beta-max", flags["scan.beta_max"], "");
  scan_cmd->add_option("--resolution", flags["scan.resolution"], "cells per axis");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? static_cast<int>(exit_ok) : static_cast<int>(exit_parse);
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) throw Error(ErrorCode::invalid_argument, "cannot read config '" + config_path + "'");
      json j;
      try {
        j = json::parse(f);
      } catch (const json::parse_error& e) {
        throw Error(ErrorCode::invalid_argument, std::string("config: ") + e.what());
      }
      apply_json(j, cfg);
    }
    json overlay = json::object();
    for (const auto& [key, text] : flags) {
      if (text.empty()) continue;
      const auto dot = key.find('.');
      if (dot == std::string::npos) {
        overlay[key] = text;
      } else {
        overlay[key.substr(0, dot)][key.substr(dot + 1)] = text;
      }
    }
    apply_json(overlay, cfg);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_parse;
  }

  if (*derive_cmd) return cmd_derive(cfg, out, err);
  if (*spectrum_cmd) return cmd_spectrum(cfg, out, err);
  if (*verify_cmd) return cmd_verify(cfg, out, err);
  if (*audit_cmd) return cmd_table_audit(cfg, out, err);
  return cmd_scan(cfg, out, err);
}

}  // namespace pseudospec::cli
