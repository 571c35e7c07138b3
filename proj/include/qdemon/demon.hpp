#pragma once

// Work extraction by quantum and classical demons, in units of kT (one bit
// of entropy is worth kT ln 2, so a value of 1 means kT ln 2 of work).

#include <string>
#include <vector>

#include "qdemon/density_matrix.hpp"
#include "qdemon/measurement.hpp"
#include "qdemon/optimizer.hpp"

namespace qdemon {

/// |Delta W_t - gqd_bound| below this counts as saturating the bound.
inline constexpr double kSaturationTolerance = 1e-3;

/// n - S(rho): work a quantum demon with global operations extracts.
double quantum_work(const DensityMatrix& rho);
/// n - (locally accessible joint entropy): classical demon measuring `apparatus`.
double classical_work(const DensityMatrix& rho, const std::string& apparatus, const QubitBasis& basis);

struct ProtocolStep {
  std::size_t index = 0;
  std::string apparatus;
  double delta_w = 0.0;
  /// Bases of the apparatus and of the earlier, non-selectively measured subsystems.
  ProductBasisSpec argmin;
  std::size_t evaluations = 0;
  bool refined = false;
};

struct ProtocolReport {
  std::vector<std::string> order;
  std::vector<ProtocolStep> steps;
  double total_advantage = 0.0;
  double gqd_bound = 0.0;
  ProductBasisSpec gqd_argmin;
  double mid_bound = 0.0;
  bool mid_fallback = false;
  bool saturated = false;
  /// Some minimization used coordinate descent rather than exhaustive search.
  bool heuristic = false;
};

/// Sequential n-copy protocol: copy i uses subsystem order[i] as apparatus after
/// non-selective measurements on order[0..i-1]. The GQD minimization is seeded with
/// the MID basis and the chained steps with the GQD argmin, so that
/// total_advantage <= gqd_bound <= mid_bound holds on the candidate set.
ProtocolReport run_protocol(const DensityMatrix& rho, const std::vector<std::string>& order,
                            const CandidateGrid& grid = {});

struct CircuitGate {
  std::string name;
  std::string control;
  std::string target;
};

/// Purification circuit for alpha|0...0> + beta|1...1> with a demon memory qubit D,
/// together with the competing classical strategy (selective sigma_z on the first qubit).
struct CircuitTrace {
  /// A1..An followed by the memory qubit D.
  SubsystemLayout layout;
  std::vector<CircuitGate> gates;
  /// Initial state followed by the state after each gate.
  std::vector<PureState> states;
  /// |<target|final>|^2 with target (alpha|0> + beta|1>) (x) |0...0> (x) |0>_D.
  double fidelity = 0.0;
  /// Local work available after purification, sum_k (1 - S(rho_k)) over A_1..A_n.
  double quantum_work = 0.0;
  /// Outcomes of the classical demon's selective measurement.
  std::vector<MeasurementOutcome> classical_outcomes;
  /// Classical record held by the demon's memory.
  DensityMatrix memory;
  double erasure_cost = 0.0;
  double classical_work = 0.0;
  double advantage = 0.0;

  const PureState& final_state() const { return states.back(); }
};

CircuitTrace simulate_schmidt_circuit(cplx alpha, cplx beta, std::size_t n);

}  // namespace qdemon
