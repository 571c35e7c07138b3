#pragma once

#include <functional>
#include <span>
#include <vector>

namespace qdemon::detail {

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
};

/// Derivative-free simplex descent. Stops when the spread of vertex values
/// drops below `tolerance` or after `max_evaluations` calls of `f`.
SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> start,
                          const std::vector<double>& step, int max_evaluations, double tolerance);

}  // namespace qdemon::detail
