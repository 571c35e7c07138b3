#pragma once

// Text density-matrix format:
//
//   qubits=<n> [labels=<L1>,<L2>,...]
//   <2^n lines of 2^n whitespace-separated entries re+imj, row-major; a bare real is re+0j>
//
// Blank lines and lines starting with '#' are ignored.

#include <string>
#include <string_view>

#include "qdemon/density_matrix.hpp"

namespace qdemon::cli {

/// Parses and validates; ParseError carries "line L, column C", ValidationError the invariant.
DensityMatrix parse_matrix(std::string_view text);
DensityMatrix load_state(const std::string& path);
/// Writes entries with 17 significant digits so parse_matrix round-trips exactly.
std::string format_matrix(const DensityMatrix& rho);

}  // namespace qdemon::cli
