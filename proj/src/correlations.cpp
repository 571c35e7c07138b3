#include "qdemon/correlations.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "qdemon/errors.hpp"
#include "qdemon/tolerances.hpp"

namespace qdemon {

namespace {

std::vector<std::string> complement(const SubsystemLayout& layout, const std::string& label) {
  layout.position(label);
  std::vector<std::string> out;
  for (const auto& l : layout.labels()) {
    if (l != label) out.push_back(l);
  }
  return out;
}

double entropy_of(const DensityMatrix& rho, const std::vector<std::string>& labels) {
  if (labels.size() == rho.qubits()) return von_neumann_entropy(rho);
  return von_neumann_entropy(partial_trace(rho, labels));
}

double apparatus_outcome_entropy(const DensityMatrix& rho, const std::string& label, const QubitBasis& basis) {
  ProductBasisSpec spec;
  spec.bases[label] = basis;
  const auto marginal = partial_trace(rho, {label});
  std::vector<double> p;
  for (const auto& o : selective_outcomes(marginal, spec)) p.push_back(o.probability);
  return shannon_entropy(p);
}

// Probabilities and conditional system entropies of a selective apparatus measurement.
struct ConditionalEntropy {
  std::vector<double> probabilities;
  double average = 0.0;
};

ConditionalEntropy conditional_entropy(const DensityMatrix& rho, const std::string& apparatus,
                                       const QubitBasis& basis) {
  const auto system = complement(rho.layout(), apparatus);
  ProductBasisSpec spec;
  spec.bases[apparatus] = basis;
  ConditionalEntropy out;
  for (const auto& o : selective_outcomes(rho, spec)) {
    out.probabilities.push_back(o.probability);
    if (o.post_state && !system.empty()) out.average += o.probability * entropy_of(*o.post_state, system);
  }
  return out;
}

}  // namespace

double FixedMeasurementValue::term(const std::string& name) const {
  for (const auto& [key, v] : decomposition) {
    if (key == name) return v;
  }
  throw std::out_of_range("no decomposition term '" + name + "'");
}

void check_order(const SubsystemLayout& layout, const std::vector<std::string>& order) {
  std::set<std::string> seen;
  for (const auto& l : order) {
    layout.position(l);
    if (!seen.insert(l).second) throw ValidationError("order", "label '" + l + "' repeated in measurement order");
  }
  if (seen.size() != layout.size()) throw ValidationError("order", "measurement order must list every subsystem");
}

double mutual_information(const DensityMatrix& rho, const std::vector<std::vector<std::string>>& partition) {
  std::set<std::string> seen;
  double sum = 0.0;
  for (const auto& group : partition) {
    if (group.empty()) throw ValidationError("partition", "empty group");
    for (const auto& l : group) {
      rho.layout().position(l);
      if (!seen.insert(l).second) throw ValidationError("partition", "label '" + l + "' appears twice");
    }
    sum += entropy_of(rho, group);
  }
  if (seen.size() != rho.qubits()) throw ValidationError("partition", "groups must cover every subsystem");
  return sum - von_neumann_entropy(rho);
}

double total_correlation(const DensityMatrix& rho) {
  std::vector<std::vector<std::string>> groups;
  for (const auto& l : rho.layout().labels()) groups.push_back({l});
  return mutual_information(rho, groups);
}

double locally_accessible_joint_entropy(const DensityMatrix& rho, const std::string& apparatus,
                                        const QubitBasis& basis) {
  const auto c = conditional_entropy(rho, apparatus, basis);
  return shannon_entropy(c.probabilities) + c.average;
}

FixedMeasurementValue thermal_qd_fixed(const DensityMatrix& rho, const std::string& apparatus,
                                       const QubitBasis& basis) {
  const auto system = complement(rho.layout(), apparatus);
  if (system.empty()) throw ValidationError("label", "apparatus needs a non-empty system");
  FixedMeasurementValue out;
  out.spec.bases[apparatus] = basis;

  const double accessible = locally_accessible_joint_entropy(rho, apparatus, basis);
  const double s = von_neumann_entropy(rho);
  out.value = accessible - s;

  const std::vector<std::vector<std::string>> split{system, {apparatus}};
  const double mi = mutual_information(rho, split);
  const double mi_measured = mutual_information(apply_channel(rho, out.spec), split);
  const double h = apparatus_outcome_entropy(rho, apparatus, basis);
  const double s_app = entropy_of(rho, {apparatus});
  out.decomposition = {{"accessible_entropy", accessible},
                       {"entropy", s},
                       {"mutual_information", mi},
                       {"measured_mutual_information", mi_measured},
                       {"outcome_entropy", h},
                       {"apparatus_entropy", s_app},
                       {"mutual_information_form", mi - mi_measured + h - s_app}};
  return out;
}

double original_qd_fixed(const DensityMatrix& rho, const std::string& apparatus, const QubitBasis& basis) {
  const auto system = complement(rho.layout(), apparatus);
  if (system.empty()) throw ValidationError("label", "apparatus needs a non-empty system");
  const auto c = conditional_entropy(rho, apparatus, basis);
  return c.average - (von_neumann_entropy(rho) - entropy_of(rho, {apparatus}));
}

FixedMeasurementValue gqd_fixed(const DensityMatrix& rho, const ProductBasisSpec& spec) {
  if (!spec.covers(rho.layout())) throw ValidationError("spec", "global discord needs a basis on every subsystem");
  FixedMeasurementValue out;
  out.spec = spec;
  const double measured = von_neumann_entropy(apply_channel(rho, spec));
  const double s = von_neumann_entropy(rho);
  out.value = measured - s;
  out.decomposition = {
      {"measured_entropy", measured}, {"entropy", s}, {"mutual_information_form", gqd_mutual_information_form(rho, spec)}};
  return out;
}

double gqd_mutual_information_form(const DensityMatrix& rho, const ProductBasisSpec& spec) {
  if (!spec.covers(rho.layout())) throw ValidationError("spec", "global discord needs a basis on every subsystem");
  double local = 0.0;
  for (const auto& label : rho.layout().labels()) {
    local += apparatus_outcome_entropy(rho, label, spec.bases.at(label)) - entropy_of(rho, {label});
  }
  return total_correlation(rho) - total_correlation(apply_channel(rho, spec)) + local;
}

std::vector<double> chained_decomposition(const DensityMatrix& rho, const ProductBasisSpec& spec,
                                          const std::vector<std::string>& order) {
  check_order(rho.layout(), order);
  if (!spec.covers(rho.layout())) throw ValidationError("spec", "chained decomposition needs a basis on every subsystem");
  std::vector<double> steps;
  ProductBasisSpec prior;
  for (const auto& label : order) {
    const DensityMatrix state = prior.bases.empty() ? rho : apply_channel(rho, prior);
    steps.push_back(thermal_qd_fixed(state, label, spec.bases.at(label)).value);
    prior.bases[label] = spec.bases.at(label);
  }
  return steps;
}

MidValue mid_multipartite(const DensityMatrix& rho) {
  MidValue out;
  out.basis = mid_basis(rho);
  out.value = gqd_fixed(rho, out.basis.spec).value;
  return out;
}

}  // namespace qdemon
