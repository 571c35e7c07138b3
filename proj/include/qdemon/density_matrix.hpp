#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qdemon/layout.hpp"

namespace qdemon {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Normalized state vector over a qubit layout.
class PureState {
 public:
  /// Throws ValidationError("norm") unless |amplitudes| = 1 within tolerance.
  PureState(SubsystemLayout layout, CVector amplitudes);

  const SubsystemLayout& layout() const noexcept { return layout_; }
  const CVector& amplitudes() const noexcept { return amplitudes_; }
  std::size_t qubits() const noexcept { return layout_.size(); }

 private:
  SubsystemLayout layout_;
  CVector amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite matrix over a qubit layout.
class DensityMatrix {
 public:
  /// Validates all invariants; throws ValidationError naming the first violated one
  /// ("dimension", "hermitian", "trace" or "positivity").
  DensityMatrix(SubsystemLayout layout, CMatrix entries);
  explicit DensityMatrix(const PureState& psi);

  /// Name and description of the first violated invariant, if any.
  static std::optional<std::string> check(const SubsystemLayout& layout, const CMatrix& entries);

  const SubsystemLayout& layout() const noexcept { return layout_; }
  const CMatrix& matrix() const noexcept { return entries_; }
  std::size_t qubits() const noexcept { return layout_.size(); }
  std::size_t dimension() const noexcept { return layout_.dimension(); }

 private:
  SubsystemLayout layout_;
  CMatrix entries_;
};

/// Eigen-decomposition with eigenvalues sorted descending; columns of
/// `vectors` are the matching orthonormal eigenvectors.
struct Spectrum {
  std::vector<double> values;
  CMatrix vectors;
};

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Reduced state on `keep`; kept subsystems stay in layout order.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::string> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<std::string> keep);

/// Reorders subsystems so the result's layout is `order` (a permutation of the labels).
DensityMatrix permute(const DensityMatrix& rho, std::span<const std::string> order);

Spectrum spectrum(const DensityMatrix& rho);

/// Von Neumann entropy in bits.
double von_neumann_entropy(const DensityMatrix& rho);

/// Shannon entropy in bits; throws ValidationError("probability") on negative
/// (below -1e-12) or non-normalized input.
double shannon_entropy(std::span<const double> p);

/// Binary entropy h(p) in bits.
double binary_entropy(double p);

namespace linalg {

/// Eigenvalues of a Hermitian matrix, ascending; throws NumericalError on failure.
Eigen::VectorXd hermitian_eigenvalues(const CMatrix& m);
/// -tr(M log2 M) for a Hermitian positive (possibly unnormalized) matrix.
double entropy_bits(const CMatrix& m);
/// Partial trace over the subsystems at `traced` positions of an n-qubit matrix.
CMatrix trace_out(const CMatrix& m, std::size_t n, std::span<const std::size_t> traced);
/// Applies the 2x2 matrix `u` to qubit `bit` on the left and `u^dagger` on the right.
void conjugate_qubit(CMatrix& m, std::size_t bit, const Eigen::Matrix2cd& u);

}  // namespace linalg

}  // namespace qdemon
