#pragma once

#include <string>
#include <vector>

#include "pseudospec/analytic.hpp"

namespace pseudospec::cli {

/// Line plot of V(x) with the normalized eigenfunctions phi_n drawn at their
/// levels eps_n. Throws Error(invalid_argument) if the file cannot be written.
void write_svg_plot(const std::string& path, const DerivedParams& d, const Superpotential& sp,
                    const GridSpec& g, const std::vector<LevelRecord>& levels);

}  // namespace pseudospec::cli
