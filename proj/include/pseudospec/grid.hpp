#pragma once

#include <cstddef>
#include <vector>

#include "pseudospec/superpotential.hpp"

namespace pseudospec {

/// Uniform grid of interior nodes x_i = x_min + (i + 1) h, i = 0..n_interior-1,
/// with homogeneous Dirichlet values at x_min and x_max.
struct GridSpec {
  double x_min = 0.0;
  double x_max = 1.0;
  std::size_t n_interior = 1;

  double step() const noexcept { return (x_max - x_min) / static_cast<double>(n_interior + 1); }
  double node(std::size_t i) const noexcept {
    return x_min + static_cast<double>(i + 1) * step();
  }
  std::vector<double> nodes() const;

  /// Same interval with the step halved (2N + 1 interior nodes); the old nodes
  /// are the odd-indexed nodes of the refined grid.
  GridSpec refined() const noexcept { return {x_min, x_max, 2 * n_interior + 1}; }

  /// (0, pi) for rm1, (-half_width, half_width) otherwise.
  static GridSpec for_family(Family family, std::size_t n_interior, double half_width);
};

/// Throws invalid_argument unless the grid matches the family's domain
/// convention (exactly (0, pi) for rm1, symmetric truncation otherwise).
void validate_grid(const GridSpec& g, Family family);

}  // namespace pseudospec
