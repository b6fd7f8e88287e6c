#include "pseudospec/error.hpp"

namespace pseudospec {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::domain_violation: return "domain violation";
    case ErrorCode::singular_gauge: return "singular gauge";
    case ErrorCode::no_bound_state: return "no bound state";
    case ErrorCode::constraint_violation: return "constraint violation";
    case ErrorCode::level_out_of_range: return "level out of range";
    case ErrorCode::overflow: return "overflow";
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::solver_failure: return "solver failure";
  }
  return "unknown";
}

}  // namespace pseudospec
