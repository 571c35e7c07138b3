#include "nelder_mead.hpp"

#include <algorithm>
#include <numeric>

namespace qdemon::detail {

SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> start,
                          const std::vector<double>& step, int max_evaluations, double tolerance) {
  const std::size_t dim = start.size();
  std::vector<std::vector<double>> pts(dim + 1, start);
  std::vector<double> vals(dim + 1);
  int evals = 0;
  std::vector<double> best_x = start;
  double best_value = 0.0;
  struct BudgetExhausted {};
  auto eval = [&](const std::vector<double>& x) {
    if (evals >= max_evaluations) throw BudgetExhausted{};
    const double v = f(x);
    if (evals == 0 || v < best_value) {
      best_value = v;
      best_x = x;
    }
    ++evals;
    return v;
  };
  try {
  vals[0] = eval(pts[0]);
  for (std::size_t k = 0; k < dim; ++k) {
    pts[k + 1][k] += step[k];
    vals[k + 1] = eval(pts[k + 1]);
  }

  std::vector<std::size_t> order(dim + 1);
  std::vector<double> centroid(dim), trial(dim), trial2(dim);
  auto along = [&](double t, std::vector<double>& out, const std::vector<double>& worst) {
    for (std::size_t k = 0; k < dim; ++k) out[k] = centroid[k] + t * (worst[k] - centroid[k]);
  };

  while (evals < max_evaluations) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[dim - 1];
    if (vals[worst] - vals[best] < tolerance) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < dim; ++k) centroid[k] += pts[i][k] / static_cast<double>(dim);
    }

    along(-1.0, trial, pts[worst]);
    const double fr = eval(trial);
    if (fr < vals[best]) {
      along(-2.0, trial2, pts[worst]);
      const double fe = eval(trial2);
      if (fe < fr) {
        pts[worst] = trial2;
        vals[worst] = fe;
      } else {
        pts[worst] = trial;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = trial;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    along(outside ? -0.5 : 0.5, trial2, pts[worst]);
    const double fc = eval(trial2);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = trial2;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < dim; ++k) pts[i][k] = pts[best][k] + 0.5 * (pts[i][k] - pts[best][k]);
      vals[i] = eval(pts[i]);
    }
  }

  } catch (const BudgetExhausted&) {
  }
  return {best_x, best_value, evals};
}

}  // namespace qdemon::detail
