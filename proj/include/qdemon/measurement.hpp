#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qdemon/density_matrix.hpp"

namespace qdemon {

/// Rank-one orthogonal projective basis of one qubit, given by the Bloch
/// direction of its first vector |v0> = (cos(theta/2), e^{i phi} sin(theta/2)).
class QubitBasis {
 public:
  QubitBasis() = default;
  /// Angles are wrapped into theta in [0, pi], phi in [0, 2 pi).
  QubitBasis(double theta, double phi);

  /// Basis whose first vector is proportional to `v`.
  static QubitBasis from_vector(const Eigen::Vector2cd& v);
  static QubitBasis computational() { return {}; }

  double theta() const noexcept { return theta_; }
  double phi() const noexcept { return phi_; }

  /// |v0> for outcome 0, |v1> = (sin(theta/2), -e^{i phi} cos(theta/2)) for outcome 1.
  Eigen::Vector2cd vector(int outcome) const;
  Eigen::Matrix2cd projector(int outcome) const;
  /// Unitary with rows <v0| and <v1|; maps the basis onto the computational one.
  Eigen::Matrix2cd rotation() const;

  friend bool operator==(const QubitBasis&, const QubitBasis&) = default;

 private:
  double theta_ = 0.0;
  double phi_ = 0.0;
};

inline QubitBasis make_basis(double theta, double phi) { return QubitBasis(theta, phi); }

/// Local basis per measured subsystem label.
struct ProductBasisSpec {
  std::map<std::string, QubitBasis> bases;

  bool measures(const std::string& label) const { return bases.count(label) != 0; }
  /// Measured labels in layout order; throws ValidationError("label") on unknown labels.
  std::vector<std::string> measured_labels(const SubsystemLayout& layout) const;
  bool covers(const SubsystemLayout& layout) const;
  /// "A:theta,phi;B:theta,phi" in layout order.
  std::string describe(const SubsystemLayout& layout, int precision = 6) const;

  friend bool operator==(const ProductBasisSpec&, const ProductBasisSpec&) = default;
};

/// Same basis on every listed label.
ProductBasisSpec uniform_spec(const std::vector<std::string>& labels, QubitBasis basis = {});

struct MeasurementOutcome {
  /// Outcome digit per measured subsystem, in layout order.
  std::vector<int> outcome;
  double probability = 0.0;
  /// Normalized state on the full layout; absent when probability < 1e-12.
  std::optional<DensityMatrix> post_state;
};

/// Non-selective measurement Phi(rho) = sum_k Pi_k rho Pi_k, identity on unmeasured qubits.
DensityMatrix apply_channel(const DensityMatrix& rho, const ProductBasisSpec& spec);

/// All 2^m outcomes of a selective measurement, first measured label most significant.
std::vector<MeasurementOutcome> selective_outcomes(const DensityMatrix& rho, const ProductBasisSpec& spec);

/// Product of the eigenbases of the single-qubit marginals.
struct MidBasis {
  ProductBasisSpec spec;
  /// Labels whose marginal was degenerate and fell back to the computational basis.
  std::vector<std::string> degenerate;

  bool fallback() const noexcept { return !degenerate.empty(); }
};

MidBasis mid_basis(const DensityMatrix& rho, const std::vector<std::string>& measured);
MidBasis mid_basis(const DensityMatrix& rho);

namespace linalg {

/// In-place non-selective measurement of the qubits at `positions` of an n-qubit matrix.
void dephase(CMatrix& m, std::size_t n, const std::vector<std::size_t>& positions,
             const std::vector<QubitBasis>& bases);

}  // namespace linalg

}  // namespace qdemon
