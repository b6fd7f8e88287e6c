#pragma once

#include <string>
#include <vector>

#include "pseudospec/params.hpp"

namespace pseudospec {

/// One published parameter row: inputs and the printed derived columns, as
/// text exactly as printed.
struct PrintedRow {
  int table = 1;  // 1: rm1, 2: rm2
  int row = 1;
  std::string alpha, beta, p1, p2;
  std::string alpha_plus_beta, four_alpha_beta, mu1, mu2, strength, cap_a, cap_b, energy_factor;
};

/// The eight built-in rows (four per family).
const std::vector<PrintedRow>& printed_rows();

struct AuditCell {
  std::string column;
  std::string printed;
  std::string computed;
  bool match = false;
};

struct AuditRow {
  PrintedRow source;
  Family family = Family::rm1_trig;
  std::vector<AuditCell> cells;

  std::size_t mismatches() const noexcept;
};

/// Rounded columns (A, a) match when within this distance of the printed value.
inline constexpr double kRoundedColumnTolerance = 0.01;

/// Recomputes every derived column in exact arithmetic. Columns are compared
/// exactly except A/a, whose printed values are rounded.
AuditRow audit_row(const PrintedRow& row);
std::vector<AuditRow> audit_tables();

}  // namespace pseudospec
