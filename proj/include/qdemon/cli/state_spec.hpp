#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qdemon/density_matrix.hpp"

namespace qdemon::cli {

/// Malformed command line, state spec or matrix file (exit code 2).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Family { schmidt, ghz, w, werner_ghz, w_ghz, classical, random_mixed, random_pure };

/// Parsed `family[:param[:param...]]` state selection.
///
///   schmidt:<n>:<|alpha|^2>   ghz[:<n>]   w   werner-ghz:<lambda>   w-ghz:<lambda>
///   classical:uniform:<n>     classical:<p0>,<p1>,...
///   random-mixed:<n>[:<rank>[:<seed>]]   random-pure:<n>[:<seed>]
///
/// For sweeps the trailing parameter of schmidt, werner-ghz and w-ghz may be omitted.
struct StateFamilySpec {
  Family family = Family::ghz;
  std::size_t qubits = 3;
  /// |alpha|^2 for schmidt, lambda for werner-ghz and w-ghz.
  double parameter = 0.0;
  bool has_parameter = false;
  std::vector<double> probabilities;
  std::size_t rank = 0;
  std::uint64_t seed = 0;

  /// Canonical text form; parses back to an equal spec.
  std::string canonical() const;
  /// True for families whose last parameter can be swept over [0, 1].
  bool sweepable() const noexcept;
  StateFamilySpec with_parameter(double value) const;

  friend bool operator==(const StateFamilySpec&, const StateFamilySpec&) = default;
};

/// Throws ParseError on malformed text; `default_seed` feeds the random families.
StateFamilySpec parse_state_spec(std::string_view text, std::uint64_t default_seed = 1);

/// Throws ValidationError when parameters are out of range or missing.
DensityMatrix build_state(const StateFamilySpec& spec);

}  // namespace qdemon::cli
