#include "pseudospec/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "pseudospec/error.hpp"

namespace pseudospec {

std::vector<double> GridSpec::nodes() const {
  std::vector<double> x(n_interior);
  for (std::size_t i = 0; i < n_interior; ++i) x[i] = node(i);
  return x;
}

GridSpec GridSpec::for_family(Family family, std::size_t n_interior, double half_width) {
  if (family == Family::rm1_trig) return {0.0, std::numbers::pi, n_interior};
  return {-half_width, half_width, n_interior};
}

void validate_grid(const GridSpec& g, Family family) {
  std::ostringstream os;
  if (g.n_interior < 3) {
    os << "grid needs at least 3 interior nodes (got " << g.n_interior << ")";
  } else if (!std::isfinite(g.x_min) || !std::isfinite(g.x_max) || !(g.x_max > g.x_min)) {
    os << "grid interval [" << g.x_min << ", " << g.x_max << "] is empty or not finite";
  } else if (family == Family::rm1_trig && (g.x_min != 0.0 || g.x_max != std::numbers::pi)) {
    os << "rm1 grids must span exactly (0, pi)";
  } else if (family != Family::rm1_trig && g.x_min != -g.x_max) {
    os << "infinite-domain grids must be symmetric (-L, L)";
  } else {
    return;
  }
  throw Error(ErrorCode::invalid_argument, os.str());
}

}  // namespace pseudospec
