#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qdemon/density_matrix.hpp"
#include "qdemon/measurement.hpp"

namespace qdemon {

/// Finite candidate set of local projective bases shared by every minimization.
///
/// Projector pairs only depend on the unordered Bloch axis, so directions are
/// taken from the upper hemisphere: theta runs over the points i*pi/(theta_steps-1)
/// that lie in [0, pi/2], phi over j*2pi/phi_steps. The angles theta = pi/2 and
/// phi in {pi/2, pi, 3pi/2} are always added; theta = 0 appears once (phi = 0).
struct CandidateGrid {
  int theta_steps = 25;
  int phi_steps = 25;
  bool refine = true;
  int max_refine_evaluations = 500;
  double refine_tolerance = 1e-8;
  /// Simplex runs per minimization: one from the grid argmin plus the best
  /// points of up to refine_starts - 1 other, mutually distant grid basins.
  int refine_starts = 4;
  /// Largest number of jointly optimized qubits that is enumerated exhaustively;
  /// larger problems use coordinate descent over subsystems.
  std::size_t exhaustive_limit = 3;
  int coordinate_sweeps = 3;

  /// Throws ValidationError("grid") on non-positive resolutions.
  void validate() const;
  /// Deterministic enumeration order: theta ascending, then phi ascending.
  std::vector<QubitBasis> candidates() const;
};

struct MinimizationResult {
  double value = 0.0;
  ProductBasisSpec argmin;
  std::size_t evaluations = 0;
  bool refined = false;
  /// Coordinate descent was used instead of exhaustive enumeration.
  bool heuristic = false;
  /// Best value before refinement (grid plus seeds).
  double grid_value = 0.0;
};

/// min over product bases of S(Phi(rho)) - S(rho). `seeds` are extra complete
/// specs evaluated alongside the grid.
MinimizationResult minimize_gqd(const DensityMatrix& rho, const CandidateGrid& grid = {},
                                std::span<const ProductBasisSpec> seeds = {});

/// min over apparatus bases of the thermal discord integrand.
MinimizationResult minimize_thermal_qd(const DensityMatrix& rho, const std::string& apparatus,
                                       const CandidateGrid& grid = {});

/// min over apparatus bases of the original discord integrand.
MinimizationResult minimize_original_qd(const DensityMatrix& rho, const std::string& apparatus,
                                        const CandidateGrid& grid = {});

/// Step i minimizes the thermal discord of Phi_{A_1..A_{i-1}}(rho) with apparatus A_i
/// jointly over the bases of A_1..A_i. Seeds contribute their restriction to
/// A_1..A_i as extra candidates at every step.
std::vector<MinimizationResult> minimize_chained(const DensityMatrix& rho, const std::vector<std::string>& order,
                                                 const CandidateGrid& grid = {},
                                                 std::span<const ProductBasisSpec> seeds = {});

}  // namespace qdemon
