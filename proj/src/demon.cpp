#include "qdemon/demon.hpp"

#include <cmath>

#include "qdemon/correlations.hpp"
#include "qdemon/errors.hpp"
#include "qdemon/states.hpp"
#include "qdemon/tolerances.hpp"

namespace qdemon {

double quantum_work(const DensityMatrix& rho) {
  return static_cast<double>(rho.qubits()) - von_neumann_entropy(rho);
}

double classical_work(const DensityMatrix& rho, const std::string& apparatus, const QubitBasis& basis) {
  return static_cast<double>(rho.qubits()) - locally_accessible_joint_entropy(rho, apparatus, basis);
}

ProtocolReport run_protocol(const DensityMatrix& rho, const std::vector<std::string>& order,
                            const CandidateGrid& grid) {
  check_order(rho.layout(), order);
  ProtocolReport report;
  report.order = order;

  const MidValue mid = mid_multipartite(rho);
  report.mid_bound = mid.value;
  report.mid_fallback = mid.fallback();

  const std::vector<ProductBasisSpec> mid_seed{mid.basis.spec};
  const auto gqd = minimize_gqd(rho, grid, mid_seed);
  report.gqd_bound = gqd.value;
  report.gqd_argmin = gqd.argmin;
  report.heuristic = gqd.heuristic;

  const std::vector<ProductBasisSpec> gqd_seed{gqd.argmin};
  const auto chained = minimize_chained(rho, order, grid, gqd_seed);
  for (std::size_t i = 0; i < chained.size(); ++i) {
    ProtocolStep step;
    step.index = i + 1;
    step.apparatus = order[i];
    step.delta_w = chained[i].value;
    step.argmin = chained[i].argmin;
    step.evaluations = chained[i].evaluations;
    step.refined = chained[i].refined;
    report.total_advantage += step.delta_w;
    report.heuristic = report.heuristic || chained[i].heuristic;
    report.steps.push_back(std::move(step));
  }
  report.saturated = std::abs(report.total_advantage - report.gqd_bound) < kSaturationTolerance;
  return report;
}

namespace {

void cnot(CVector& amp, std::size_t control_bit, std::size_t target_bit) {
  const std::size_t cmask = std::size_t{1} << control_bit;
  const std::size_t tmask = std::size_t{1} << target_bit;
  for (Eigen::Index i = 0; i < amp.size(); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    if ((idx & cmask) && !(idx & tmask)) std::swap(amp(i), amp(static_cast<Eigen::Index>(idx | tmask)));
  }
}

}  // namespace

CircuitTrace simulate_schmidt_circuit(cplx alpha, cplx beta, std::size_t n) {
  const double norm = std::norm(alpha) + std::norm(beta);
  if (std::abs(norm - 1.0) > kValidationTolerance) throw ValidationError("norm", "|alpha|^2 + |beta|^2 must be 1");
  if (n < 2 || n + 1 > kMaxQubits) throw ValidationError("qubits", "circuit needs 2 <= n < " + std::to_string(kMaxQubits));

  std::vector<std::string> labels;
  for (std::size_t k = 1; k <= n; ++k) labels.push_back("A" + std::to_string(k));
  const SubsystemLayout system(labels);
  CVector psi = CVector::Zero(static_cast<Eigen::Index>(system.dimension()));
  psi(0) = alpha;
  psi(psi.size() - 1) = beta;
  const PureState input(system, psi);

  const std::string memory_label = "D";
  CircuitTrace trace{system.concat(SubsystemLayout({memory_label})),
                     {},
                     {},
                     0.0,
                     0.0,
                     {},
                     DensityMatrix(SubsystemLayout({memory_label}), CMatrix::Identity(2, 2) / 2.0)};
  const auto& layout = trace.layout;
  const std::string& apparatus = layout.label(0);

  // |psi> (x) |0>_D
  CVector amp = CVector::Zero(static_cast<Eigen::Index>(layout.dimension()));
  for (Eigen::Index i = 0; i < psi.size(); ++i) amp(2 * i) = psi(i);
  trace.states.emplace_back(layout, amp);

  trace.gates.push_back({"CNOT", apparatus, memory_label});
  for (std::size_t k = 1; k < n; ++k) trace.gates.push_back({"CNOT", apparatus, layout.label(k)});
  trace.gates.push_back({"CNOT", apparatus, memory_label});
  for (const auto& gate : trace.gates) {
    cnot(amp, layout.bit(layout.position(gate.control)), layout.bit(layout.position(gate.target)));
    trace.states.emplace_back(layout, amp);
  }

  CVector target = CVector::Zero(amp.size());
  target(0) = alpha;
  target(static_cast<Eigen::Index>(std::size_t{1} << n)) = beta;
  trace.fidelity = std::norm(target.dot(amp));

  const DensityMatrix final_rho(trace.final_state());
  for (std::size_t k = 0; k < n; ++k) {
    const std::vector<std::string> keep{layout.label(k)};
    trace.quantum_work += 1.0 - von_neumann_entropy(partial_trace(final_rho, keep));
  }

  // Classical demon: selective computational-basis measurement of the apparatus, one memory bit.
  const DensityMatrix rho(input);
  ProductBasisSpec spec;
  spec.bases[apparatus] = QubitBasis::computational();
  trace.classical_outcomes = selective_outcomes(rho, spec);
  CMatrix record = CMatrix::Zero(2, 2);
  double extracted = 0.0;
  for (std::size_t k = 0; k < trace.classical_outcomes.size(); ++k) {
    const auto& o = trace.classical_outcomes[k];
    record(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = o.probability;
    if (o.post_state) extracted += o.probability * quantum_work(*o.post_state);
  }
  trace.memory = DensityMatrix(SubsystemLayout({memory_label}), std::move(record));
  trace.erasure_cost = von_neumann_entropy(trace.memory);
  trace.classical_work = extracted - trace.erasure_cost;
  trace.advantage = trace.quantum_work - trace.classical_work;
  return trace;
}

}  // namespace qdemon
