#include "qdemon/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "blocks.hpp"
#include "nelder_mead.hpp"
#include "qdemon/correlations.hpp"
#include "qdemon/errors.hpp"
#include "qdemon/simd/kernels.hpp"

namespace qdemon {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
// A later candidate must beat the incumbent by more than this to replace it.
constexpr double kTieTolerance = 1e-12;

struct CandidateSet {
  std::vector<QubitBasis> bases;
  simd::DirectionTable table;

  explicit CandidateSet(const CandidateGrid& grid) : bases(grid.candidates()) {
    for (const auto& b : bases) table.push_back(b.theta(), b.phi());
  }
  std::size_t size() const noexcept { return bases.size(); }
};

// Objective over the bases of `positions` (in measurement sequence):
//   S(Phi_Q(rho)) - S(Phi_{Q minus last}(rho))  when prefix_baseline,
//   S(Phi_Q(rho)) - S(rho)                      otherwise.
struct Problem {
  const CMatrix& rho;
  std::size_t n;
  std::vector<std::size_t> positions;
  bool prefix_baseline;
  double rho_entropy;

  double evaluate(const std::vector<QubitBasis>& bases) const {
    const auto s = detail::prefix_entropies(rho, n, positions, bases);
    return s.back() - (prefix_baseline ? s[s.size() - 2] : s.front());
  }
};

// Angle between the measurement axes of two bases; antipodal directions are the same axis.
double axis_angle(const QubitBasis& a, const QubitBasis& b) {
  const double dot = std::cos(a.theta()) * std::cos(b.theta()) +
                     std::sin(a.theta()) * std::sin(b.theta()) * std::cos(a.phi() - b.phi());
  return std::acos(std::min(1.0, std::abs(dot)));
}

struct Niche {
  double value;
  std::vector<QubitBasis> bases;
};

struct Best {
  double value = kInf;
  std::vector<QubitBasis> bases;
  std::size_t evaluations = 0;
  // Best points of mutually distant basins, used as extra refinement starts.
  std::vector<Niche> niches;
  std::size_t niche_capacity = 0;
  double niche_radius = 0.0;

  bool improves(double v) const noexcept { return v < value - kTieTolerance; }

  bool admits(double v) const noexcept {
    if (improves(v)) return true;
    if (niche_capacity == 0) return false;
    return niches.size() < niche_capacity || v < niches.back().value - kTieTolerance;
  }

  void offer(double v, const std::vector<QubitBasis>& b) {
    if (improves(v)) {
      value = v;
      bases = b;
    }
    if (niche_capacity > 0) offer_niche(v, b);
  }

 private:
  bool near(const std::vector<QubitBasis>& x, const std::vector<QubitBasis>& y) const {
    for (std::size_t k = 0; k < x.size(); ++k)
      if (axis_angle(x[k], y[k]) > niche_radius) return false;
    return true;
  }

  void offer_niche(double v, const std::vector<QubitBasis>& b) {
    for (const auto& n : niches)
      if (n.value <= v + kTieTolerance && near(n.bases, b)) return;
    std::erase_if(niches, [&](const Niche& n) { return near(n.bases, b); });
    const auto at = std::find_if(niches.begin(), niches.end(), [&](const Niche& n) { return v < n.value; });
    niches.insert(at, Niche{v, b});
    if (niches.size() > niche_capacity) niches.pop_back();
  }
};

void exhaustive(const Problem& pb, const CandidateSet& cands, std::size_t level, const detail::BlockState& state,
                std::vector<QubitBasis>& chosen, std::vector<double>& scratch, Best& best) {
  const std::size_t q = pb.positions[level];
  if (level + 1 < pb.positions.size()) {
    for (const auto& basis : cands.bases) {
      chosen[level] = basis;
      exhaustive(pb, cands, level + 1, detail::project(state, q, basis), chosen, scratch, best);
    }
    return;
  }

  const double baseline = pb.prefix_baseline ? detail::block_entropy(state) : pb.rho_entropy;
  best.evaluations += cands.size();
  if (state.remaining.size() == 1) {
    std::vector<simd::Hermitian2> blocks;
    blocks.reserve(state.blocks.size());
    for (const auto& b : state.blocks) blocks.push_back(detail::as_hermitian2(b));
    simd::projected_pair_entropy(blocks, cands.table, scratch);
    for (std::size_t c = 0; c < cands.size(); ++c) {
      const double v = scratch[c] - baseline;
      if (best.admits(v)) {
        chosen[level] = cands.bases[c];
        best.offer(v, chosen);
      }
    }
    return;
  }
  for (const auto& basis : cands.bases) {
    const double v = detail::block_entropy(detail::project(state, q, basis)) - baseline;
    if (best.admits(v)) {
      chosen[level] = basis;
      best.offer(v, chosen);
    }
  }
}

void coordinate_descent(const Problem& pb, const CandidateSet& cands, int sweeps, Best& best) {
  std::vector<QubitBasis> current(pb.positions.size(), cands.bases.front());
  double current_value = pb.evaluate(current);
  ++best.evaluations;
  best.offer(current_value, current);
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    for (std::size_t j = 0; j < current.size(); ++j) {
      std::vector<QubitBasis> trial = current;
      for (const auto& basis : cands.bases) {
        trial[j] = basis;
        const double v = pb.evaluate(trial);
        ++best.evaluations;
        if (v < current_value - kTieTolerance) {
          current_value = v;
          current[j] = basis;
        }
      }
      best.offer(current_value, current);
    }
  }
}

ProductBasisSpec to_spec(const SubsystemLayout& layout, const std::vector<std::size_t>& positions,
                         const std::vector<QubitBasis>& bases) {
  ProductBasisSpec spec;
  for (std::size_t k = 0; k < positions.size(); ++k) spec.bases[layout.label(positions[k])] = bases[k];
  return spec;
}

MinimizationResult solve(const DensityMatrix& rho, const Problem& pb, const CandidateGrid& grid,
                         std::span<const ProductBasisSpec> seeds) {
  grid.validate();
  const CandidateSet cands(grid);
  const auto& layout = rho.layout();
  const std::size_t m = pb.positions.size();

  const double dtheta = 0.5 * kPi / std::max(grid.theta_steps - 1, 1);
  const double dphi = kPi / grid.phi_steps;

  Best best;
  if (grid.refine) {
    best.niche_capacity = static_cast<std::size_t>(grid.refine_starts);
    best.niche_radius = 4.0 * dtheta;
  }
  MinimizationResult out;
  if (m <= grid.exhaustive_limit) {
    std::vector<QubitBasis> chosen(m);
    std::vector<double> scratch(cands.size());
    exhaustive(pb, cands, 0, detail::initial_blocks(pb.rho, pb.n), chosen, scratch, best);
  } else {
    coordinate_descent(pb, cands, grid.coordinate_sweeps, best);
    out.heuristic = true;
  }

  for (const auto& seed : seeds) {
    std::vector<QubitBasis> bases;
    for (auto p : pb.positions) {
      const auto it = seed.bases.find(layout.label(p));
      if (it == seed.bases.end()) break;
      bases.push_back(it->second);
    }
    if (bases.size() != m) continue;
    ++best.evaluations;
    best.offer(pb.evaluate(bases), bases);
  }

  out.grid_value = pb.evaluate(best.bases);
  out.value = out.grid_value;
  out.argmin = to_spec(layout, pb.positions, best.bases);

  if (grid.refine) {
    auto objective = [&](std::span<const double> x) {
      std::vector<QubitBasis> bases;
      for (std::size_t k = 0; k < m; ++k) bases.emplace_back(x[2 * k], x[2 * k + 1]);
      return pb.evaluate(bases);
    };
    std::vector<std::vector<QubitBasis>> starts{best.bases};
    for (const auto& n : best.niches) {
      if (starts.size() >= static_cast<std::size_t>(grid.refine_starts)) break;
      const bool same = std::equal(n.bases.begin(), n.bases.end(), best.bases.begin(), [](const auto& a, const auto& b) {
        return a.theta() == b.theta() && a.phi() == b.phi();
      });
      if (!same) starts.push_back(n.bases);
    }
    std::vector<double> step;
    for (std::size_t k = 0; k < m; ++k) {
      step.push_back(dtheta);
      step.push_back(dphi);
    }
    for (const auto& from : starts) {
      std::vector<double> start;
      for (const auto& b : from) {
        start.push_back(b.theta());
        start.push_back(b.phi());
      }
      const auto res = detail::nelder_mead(objective, start, step, grid.max_refine_evaluations, grid.refine_tolerance);
      best.evaluations += static_cast<std::size_t>(res.evaluations);
      std::vector<QubitBasis> refined;
      for (std::size_t k = 0; k < m; ++k) refined.emplace_back(res.x[2 * k], res.x[2 * k + 1]);
      const double v = pb.evaluate(refined);
      if (v < out.value && (!out.refined || v < out.value - kTieTolerance)) {
        out.value = v;
        out.argmin = to_spec(layout, pb.positions, refined);
        out.refined = true;
      }
    }
  }
  out.evaluations = best.evaluations;
  if (!std::isfinite(out.value)) throw NumericalError("minimization produced a non-finite value");
  return out;
}

}  // namespace

void CandidateGrid::validate() const {
  if (theta_steps < 1 || phi_steps < 1) throw ValidationError("grid", "theta and phi steps must be positive");
  if (max_refine_evaluations < 1 || !(refine_tolerance > 0.0)) {
    throw ValidationError("grid", "refinement budget and tolerance must be positive");
  }
  if (refine_starts < 1) throw ValidationError("grid", "refine_starts must be positive");
  if (coordinate_sweeps < 1) throw ValidationError("grid", "coordinate sweeps must be positive");
}

std::vector<QubitBasis> CandidateGrid::candidates() const {
  validate();
  constexpr double eps = 1e-12;
  std::vector<double> thetas;
  for (int i = 1; theta_steps > 1 && i < theta_steps; ++i) {
    const double t = i * kPi / (theta_steps - 1);
    if (t <= 0.5 * kPi + eps) thetas.push_back(std::min(t, 0.5 * kPi));
  }
  if (thetas.empty() || std::abs(thetas.back() - 0.5 * kPi) > eps) thetas.push_back(0.5 * kPi);

  std::vector<double> phis;
  for (int j = 0; j < phi_steps; ++j) phis.push_back(j * 2.0 * kPi / phi_steps);
  for (double extra : {0.5 * kPi, kPi, 1.5 * kPi}) {
    const bool present = std::any_of(phis.begin(), phis.end(), [&](double p) { return std::abs(p - extra) < eps; });
    if (!present) phis.push_back(extra);
  }
  std::sort(phis.begin(), phis.end());

  std::vector<QubitBasis> out{QubitBasis::computational()};
  for (double t : thetas) {
    for (double p : phis) out.emplace_back(t, p);
  }
  return out;
}

MinimizationResult minimize_gqd(const DensityMatrix& rho, const CandidateGrid& grid,
                                std::span<const ProductBasisSpec> seeds) {
  std::vector<std::size_t> all(rho.qubits());
  for (std::size_t p = 0; p < all.size(); ++p) all[p] = p;
  const Problem pb{rho.matrix(), rho.qubits(), all, false, von_neumann_entropy(rho)};
  return solve(rho, pb, grid, seeds);
}

MinimizationResult minimize_thermal_qd(const DensityMatrix& rho, const std::string& apparatus,
                                       const CandidateGrid& grid) {
  if (rho.qubits() < 2) throw ValidationError("label", "apparatus needs a non-empty system");
  const Problem pb{rho.matrix(), rho.qubits(), {rho.layout().position(apparatus)}, true, von_neumann_entropy(rho)};
  return solve(rho, pb, grid, {});
}

MinimizationResult minimize_original_qd(const DensityMatrix& rho, const std::string& apparatus,
                                        const CandidateGrid& grid) {
  grid.validate();
  if (rho.qubits() < 2) throw ValidationError("label", "apparatus needs a non-empty system");
  rho.layout().position(apparatus);
  MinimizationResult out;
  QubitBasis best_basis;
  double best = kInf;
  for (const auto& basis : grid.candidates()) {
    const double v = original_qd_fixed(rho, apparatus, basis);
    ++out.evaluations;
    if (v < best - kTieTolerance) {
      best = v;
      best_basis = basis;
    }
  }
  out.grid_value = best;
  out.value = best;
  out.argmin.bases[apparatus] = best_basis;
  if (grid.refine) {
    auto objective = [&](std::span<const double> x) { return original_qd_fixed(rho, apparatus, QubitBasis(x[0], x[1])); };
    const auto res = detail::nelder_mead(objective, {best_basis.theta(), best_basis.phi()},
                                         {0.5 * kPi / std::max(grid.theta_steps - 1, 1), kPi / grid.phi_steps},
                                         grid.max_refine_evaluations, grid.refine_tolerance);
    out.evaluations += static_cast<std::size_t>(res.evaluations);
    const QubitBasis refined(res.x[0], res.x[1]);
    const double v = original_qd_fixed(rho, apparatus, refined);
    if (v < best) {
      out.value = v;
      out.argmin.bases[apparatus] = refined;
      out.refined = true;
    }
  }
  return out;
}

std::vector<MinimizationResult> minimize_chained(const DensityMatrix& rho, const std::vector<std::string>& order,
                                                 const CandidateGrid& grid,
                                                 std::span<const ProductBasisSpec> seeds) {
  check_order(rho.layout(), order);
  const double s = von_neumann_entropy(rho);
  std::vector<MinimizationResult> steps;
  std::vector<std::size_t> prefix;
  for (const auto& label : order) {
    prefix.push_back(rho.layout().position(label));
    const Problem pb{rho.matrix(), rho.qubits(), prefix, true, s};
    steps.push_back(solve(rho, pb, grid, seeds));
  }
  return steps;
}

}  // namespace qdemon
