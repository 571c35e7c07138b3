#pragma once

// Discord-type functionals at a fixed measurement. Minimization over
// measurement bases lives in optimizer.hpp.

#include <string>
#include <utility>
#include <vector>

#include "qdemon/density_matrix.hpp"
#include "qdemon/measurement.hpp"

namespace qdemon {

struct FixedMeasurementValue {
  double value = 0.0;
  ProductBasisSpec spec;
  /// Named intermediate terms, e.g. the mutual-information form of the same value.
  std::vector<std::pair<std::string, double>> decomposition;

  /// Looks up a decomposition term; throws std::out_of_range if absent.
  double term(const std::string& name) const;
};

/// Sum of group entropies minus the joint entropy; groups must partition the labels.
double mutual_information(const DensityMatrix& rho, const std::vector<std::vector<std::string>>& partition);
/// One group per subsystem.
double total_correlation(const DensityMatrix& rho);

/// H(outcomes on the apparatus) + sum_i p_i S(system | outcome i), system = all other labels.
double locally_accessible_joint_entropy(const DensityMatrix& rho, const std::string& apparatus,
                                        const QubitBasis& basis);

/// Thermal discord integrand S_A(rho) - S(rho) before minimization.
///
/// Decomposition terms: accessible_entropy, entropy, mutual_information,
/// measured_mutual_information, outcome_entropy, apparatus_entropy and
/// mutual_information_form (I - I_Phi + H - S_A, equal to the value).
FixedMeasurementValue thermal_qd_fixed(const DensityMatrix& rho, const std::string& apparatus,
                                       const QubitBasis& basis);

/// Original discord integrand: measured conditional entropy minus S(rho) - S(rho_A).
double original_qd_fixed(const DensityMatrix& rho, const std::string& apparatus, const QubitBasis& basis);

/// S(Phi(rho)) - S(rho) for a spec measuring every subsystem.
/// Decomposition terms: measured_entropy, entropy, mutual_information_form.
FixedMeasurementValue gqd_fixed(const DensityMatrix& rho, const ProductBasisSpec& spec);

/// I(rho) - I(Phi(rho)) + sum_k [H(p_k) - S(rho_k)], algebraically equal to gqd_fixed.
double gqd_mutual_information_form(const DensityMatrix& rho, const ProductBasisSpec& spec);

/// Thermal discord of each step in `order`, each taken on the state already
/// non-selectively measured on the preceding labels. Sums to gqd_fixed.
std::vector<double> chained_decomposition(const DensityMatrix& rho, const ProductBasisSpec& spec,
                                          const std::vector<std::string>& order);

struct MidValue {
  double value = 0.0;
  MidBasis basis;

  bool fallback() const noexcept { return basis.fallback(); }
};

/// gqd_fixed at the marginal eigenbases; no optimization.
MidValue mid_multipartite(const DensityMatrix& rho);

/// Throws ValidationError("order") unless `order` lists each label exactly once.
void check_order(const SubsystemLayout& layout, const std::vector<std::string>& order);

}  // namespace qdemon
