#include "pseudospec/table_audit.hpp"

#include <cmath>
#include <cstdio>

#include "pseudospec/error.hpp"

namespace pseudospec {

namespace {

Rational must_parse(const std::string& text) {
  auto r = parse_rational(text);
  if (!r) throw Error(ErrorCode::invalid_argument, "bad table entry '" + text + "'");
  return *r;
}

AuditCell exact_cell(const std::string& column, const std::string& printed, const Rational& value) {
  return {column, printed, to_string(value), must_parse(printed) == value};
}

std::string format_rounded(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

const std::vector<PrintedRow>& printed_rows() {
  static const std::vector<PrintedRow> rows = {
      {1, 1, "1/4", "1/2", "3/2", "1/8", "3/4", "1/2", "-1/12", "3/2", "12", "4", "1", "1/4"},
      {1, 2, "1/4", "2/3", "1", "1/2", "11/12", "2/3", "-5/2", "5", "36", "6.52", "24", "1/12"},
      {1, 3, "1/8", "3/4", "1", "2", "7/8", "3/8", "-10", "5", "32", "6.18", "80", "1/8"},
      {1, 4, "1/3", "1/2", "1", "2", "5/6", "2/3", "-2", "1", "6", "3", "36", "1/6"},
      {2, 1, "1/4", "1/2", "3/2", "1/4", "3/4", "1/2", "-1/6", "-3/2", "24", "4.42", "2", "1/4"},
      {2, 2, "1/3", "1/2", "1", "1/8", "5/6", "2/3", "-1/8", "-1", "18", "3.74", "3/2", "1/6"},
      {2, 3, "1/6", "1/3", "3/2", "1/2", "1/2", "2/9", "-1/9", "-1/2", "10", "2.70", "1/2", "1/6"},
      {2, 4, "1/3", "1/2", "1/2", "1/8", "5/6", "2/3", "-1/4", "-1/2", "6", "2", "4", "1/6"},
  };
  return rows;
}

std::size_t AuditRow::mismatches() const noexcept {
  std::size_t m = 0;
  for (const auto& c : cells) m += c.match ? 0 : 1;
  return m;
}

AuditRow audit_row(const PrintedRow& row) {
  AuditRow out;
  out.source = row;
  out.family = row.table == 1 ? Family::rm1_trig : Family::rm2_hyp;
  const bool rm1 = out.family == Family::rm1_trig;
  const ExactDerived e = derive_exact(out.family, must_parse(row.alpha), must_parse(row.beta),
                                      must_parse(row.p1), must_parse(row.p2));
  out.cells.push_back(exact_cell("alpha+beta", row.alpha_plus_beta, e.alpha_plus_beta));
  out.cells.push_back(exact_cell("4 alpha beta", row.four_alpha_beta, e.four_alpha_beta));
  out.cells.push_back(exact_cell("mu1", row.mu1, e.mu1));
  out.cells.push_back(exact_cell("mu2", row.mu2, e.mu2));
  out.cells.push_back(exact_cell(rm1 ? "sigma" : "chi", row.strength, e.strength));

  AuditCell a{rm1 ? "A" : "a", row.cap_a,
              e.cap_a_exact ? to_string(*e.cap_a_exact) : format_rounded(e.cap_a), false};
  a.match = std::abs(to_double(must_parse(row.cap_a)) - e.cap_a) <= kRoundedColumnTolerance;
  out.cells.push_back(a);

  out.cells.push_back(exact_cell(rm1 ? "B" : "b", row.cap_b, e.cap_b));
  out.cells.push_back(exact_cell("E_n/eps_n", row.energy_factor, e.scale));
  return out;
}

std::vector<AuditRow> audit_tables() {
  std::vector<AuditRow> out;
  for (const auto& row : printed_rows()) out.push_back(audit_row(row));
  return out;
}

}  // namespace pseudospec
