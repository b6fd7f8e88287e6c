#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pseudospec {

enum class ErrorCode {
  domain_violation,
  singular_gauge,
  no_bound_state,
  constraint_violation,
  level_out_of_range,
  overflow,
  invalid_argument,
  solver_failure,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every library failure is reported through this type; `code()` tells the
/// CLI which exit status to use.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pseudospec
