#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qdemon/optimizer.hpp"

namespace qdemon::cli {

enum class Command { measure, protocol, sweep, validate };
enum class Format { csv, json };

/// Fully resolved command-line configuration. Defaults match the documented CLI defaults.
struct RunConfig {
  Command command = Command::measure;
  std::string state;
  std::string state_file;
  /// Comma-separated list of thermal_qd, original_qd, gqd, mid.
  std::string measure = "gqd";
  /// Measurement order; empty means layout order.
  std::vector<std::string> order;
  int theta_steps = 25;
  int phi_steps = 25;
  bool refine = true;
  double from = 0.0;
  double to = 1.0;
  double step = 0.05;
  Format format = Format::csv;
  std::string out;
  int precision = 6;
  std::uint64_t seed = 1;
  bool parallel = false;

  CandidateGrid grid() const;
  /// Command line that parses back to this config.
  std::string canonical() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses arguments without the program name; throws ParseError.
RunConfig parse_args(const std::vector<std::string>& args);

std::string_view command_name(Command c) noexcept;

}  // namespace qdemon::cli
