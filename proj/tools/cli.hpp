#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pseudospec/params.hpp"
#include "pseudospec/verify.hpp"

namespace pseudospec::cli {

inline constexpr const char* kSchema = "pseudospec/1";

enum ExitCode : int {
  exit_ok = 0,
  exit_parse = 2,
  exit_constraints = 3,
  exit_solver = 4,
  exit_verification = 5,
};

enum class Model { rm1, rm2, rm1_pt, rm2_pt, harmonic };
enum class Format { csv, json };

const char* to_string(Model m) noexcept;
std::optional<Model> parse_model(const std::string& text);

struct ScanRange {
  double alpha_min = 0.0;
  double alpha_max = 1.0;
  double beta_min = 0.0;
  double beta_max = 1.0;
  int resolution = 41;
};

struct RunConfig {
  Model model = Model::rm1;
  double alpha = 0.25;
  double beta = 0.5;
  double a1 = 1.5;
  double b1 = 0.125;
  double a2 = 1.5;
  double b2 = 0.25;
  /// 0 picks the per-family default (3999 rm1, 4000 rm2, 2000 harmonic).
  std::size_t n_interior = 0;
  /// 0 picks default_half_width() for infinite domains.
  double half_width = 0.0;
  int levels = 5;
  Tolerances tolerances;
  std::string output;
  Format format = Format::csv;
  bool format_set = false;
  std::string plot;
  ScanRange scan;

  Family family() const noexcept;
  /// Superpotential with the pt variants' B forced to zero.
  Superpotential superpotential() const;
  SwansonParams swanson() const noexcept { return {alpha, beta}; }
  std::size_t resolved_n() const noexcept;
  /// Output format, inferred from the output extension unless set.
  Format resolved_format() const noexcept;
};

/// Parses "p/q" or a decimal.
std::optional<double> parse_number(const std::string& text);
/// Reads the keys of a JSON config over `cfg`. Throws Error(invalid_argument).
void apply_json(const nlohmann::json& j, RunConfig& cfg);
nlohmann::json to_json(const RunConfig& cfg);

/// Derived parameters for the configured model (derive_pt for pt variants).
DerivedParams derive_model(const RunConfig& cfg);
GridSpec resolve_grid(const RunConfig& cfg, const DerivedParams& d);

int cmd_derive(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_table_audit(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command line (argv[0] is the program name). Reports go to `out`
/// unless --output names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Worker count for parallel scans: PSEUDOSPEC_THREADS if set and positive,
/// otherwise the hardware concurrency (at least 1).
unsigned worker_count();

/// Shortest exact rational with denominator <= 10^6 that converts back to x.
std::optional<Rational> rationalize(double x);

}  // namespace pseudospec::cli
