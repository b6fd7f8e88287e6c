#include <set>
#include <string>

#include <doctest.h>

#include "pseudospec/table_audit.hpp"

using namespace pseudospec;

namespace {

const AuditCell* cell(const AuditRow& row, const std::string& column) {
  for (const auto& c : row.cells) {
    if (c.column == column) return &c;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("eight printed rows") {
  const auto& rows = printed_rows();
  REQUIRE(rows.size() == 8);
  CHECK(rows[0].table == 1);
  CHECK(rows[0].alpha == "1/4");
  CHECK(rows[0].mu1 == "-1/12");
  CHECK(rows[4].table == 2);
  CHECK(rows[4].strength == "24");
}

TEST_CASE("audit finds exactly the known discrepancies") {
  const auto rows = audit_tables();
  REQUIRE(rows.size() == 8);
  std::set<std::string> found;
  std::size_t total = 0;
  for (const auto& row : rows) {
    total += row.mismatches();
    for (const auto& c : row.cells) {
      if (!c.match) {
        found.insert(std::to_string(row.source.table) + "." + std::to_string(row.source.row) +
                     " " + c.column);
      }
    }
  }
  CHECK(total == 5);
  CHECK(found == std::set<std::string>{"1.4 B", "2.2 a", "2.3 b", "2.3 E_n/eps_n", "2.4 b"});
}

TEST_CASE("recomputed values") {
  const auto rows = audit_tables();
  CHECK(cell(rows[3], "B")->computed == "24");
  CHECK(cell(rows[3], "B")->printed == "36");
  CHECK(cell(rows[6], "b")->computed == "14/9");
  CHECK(cell(rows[6], "E_n/eps_n")->computed == "1/2");
  CHECK(cell(rows[7], "b")->computed == "3/2");
  for (int k = 0; k < 3; ++k) CHECK(rows[k].mismatches() == 0);
  CHECK(rows[4].mismatches() == 0);
  CHECK(rows[0].family == Family::rm1_trig);
  CHECK(rows[4].family == Family::rm2_hyp);
}

TEST_CASE("rounded columns use the rounding tolerance") {
  PrintedRow r = printed_rows()[4];
  r.cap_a = "4.43";
  CHECK(cell(audit_row(r), "a")->match);
  r.cap_a = "4.44";
  CHECK_FALSE(cell(audit_row(r), "a")->match);
  r = printed_rows()[0];
  r.mu1 = "-1/11";
  CHECK_FALSE(cell(audit_row(r), "mu1")->match);
}
