#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qdemon/cli/config.hpp"
#include "qdemon/density_matrix.hpp"

namespace qdemon::cli {

enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitValidation = 3, kExitNumerical = 4 };

struct MeasureRow {
  std::string state;
  std::string measure;
  double value = 0.0;
  std::string argmin;
  std::size_t evaluations = 0;
  bool refined = false;
  bool heuristic = false;
  bool fallback = false;
};

struct SweepRow {
  double lambda = 0.0;
  double mid = 0.0;
  double gqd = 0.0;
  double dw_total = 0.0;
  bool saturated = false;
};

std::vector<MeasureRow> cmd_measure(const RunConfig& config);
std::vector<SweepRow> cmd_sweep(const RunConfig& config);
/// Parameter values visited by a sweep: from, from + step, ... up to `to`.
std::vector<double> sweep_points(double from, double to, double step);

/// Serialized command output in the configured format.
std::string render(const RunConfig& config);

/// Entry point shared by the executable and the tests. Diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qdemon::cli
