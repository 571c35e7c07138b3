#include "qdemon/states.hpp"

#include <cmath>
#include <random>

#include "qdemon/errors.hpp"
#include "qdemon/tolerances.hpp"

namespace qdemon::states {

namespace {

void require_qubits(std::size_t n, std::size_t min) {
  if (n < min || n > kMaxQubits) {
    throw ValidationError("qubits", "qubit count must be in [" + std::to_string(min) + ", " +
                                        std::to_string(kMaxQubits) + "]");
  }
}

void require_unit_interval(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) throw ValidationError("range", std::string(name) + " must lie in [0, 1]");
}

CMatrix projector(const PureState& psi) { return psi.amplitudes() * psi.amplitudes().adjoint(); }

}  // namespace

PureState schmidt(std::size_t n, cplx alpha) {
  require_qubits(n, 2);
  const double weight = std::norm(alpha);
  if (weight > 1.0 + kValidationTolerance) throw ValidationError("range", "|alpha| must not exceed 1");
  const double beta = std::sqrt(std::max(0.0, 1.0 - weight));
  const auto layout = SubsystemLayout::qubits(n);
  CVector amp = CVector::Zero(static_cast<Eigen::Index>(layout.dimension()));
  amp(0) = alpha;
  amp(amp.size() - 1) = beta;
  return PureState(layout, amp);
}

PureState schmidt_weight(std::size_t n, double alpha_squared) {
  require_unit_interval(alpha_squared, "|alpha|^2");
  return schmidt(n, cplx{std::sqrt(alpha_squared), 0.0});
}

PureState ghz(std::size_t n) {
  require_qubits(n, 2);
  const auto layout = SubsystemLayout::qubits(n);
  CVector amp = CVector::Zero(static_cast<Eigen::Index>(layout.dimension()));
  amp(0) = M_SQRT1_2;
  amp(amp.size() - 1) = -M_SQRT1_2;
  return PureState(layout, amp);
}

PureState w() {
  const auto layout = SubsystemLayout::qubits(3);
  CVector amp = CVector::Zero(8);
  const double a = 1.0 / std::sqrt(3.0);
  amp(1) = a;
  amp(2) = a;
  amp(4) = a;
  return PureState(layout, amp);
}

DensityMatrix werner_ghz(double lambda) {
  require_unit_interval(lambda, "lambda");
  CMatrix m = (1.0 - lambda) / 8.0 * CMatrix::Identity(8, 8) + lambda * projector(ghz(3));
  return DensityMatrix(SubsystemLayout::qubits(3), std::move(m));
}

DensityMatrix w_ghz(double lambda) {
  require_unit_interval(lambda, "lambda");
  CMatrix m = lambda * projector(w()) + (1.0 - lambda) * projector(ghz(3));
  return DensityMatrix(SubsystemLayout::qubits(3), std::move(m));
}

DensityMatrix classical(std::span<const double> probabilities) {
  const std::size_t dim = probabilities.size();
  if (dim < 2 || (dim & (dim - 1)) != 0) throw ValidationError("dimension", "probability table length must be 2^n");
  std::size_t n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  double total = 0.0;
  for (double p : probabilities) {
    if (!(p >= 0.0)) throw ValidationError("probability", "probabilities must be non-negative");
    total += p;
  }
  if (std::abs(total - 1.0) > kValidationTolerance) throw ValidationError("probability", "probabilities must sum to 1");
  CMatrix m = CMatrix::Zero(dim, dim);
  for (std::size_t k = 0; k < dim; ++k) m(k, k) = probabilities[k];
  return DensityMatrix(SubsystemLayout::qubits(n), std::move(m));
}

PureState random_pure(std::size_t n, std::uint64_t seed) {
  require_qubits(n, 1);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const auto layout = SubsystemLayout::qubits(n);
  CVector amp(static_cast<Eigen::Index>(layout.dimension()));
  for (auto& a : amp) a = cplx{normal(rng), normal(rng)};
  amp.normalize();
  return PureState(layout, amp);
}

DensityMatrix random_mixed(std::size_t n, std::size_t rank, std::uint64_t seed) {
  require_qubits(n, 1);
  const auto layout = SubsystemLayout::qubits(n);
  const std::size_t dim = layout.dimension();
  if (rank < 1 || rank > dim) throw ValidationError("rank", "rank must lie in [1, 2^n]");
  // Columns of g are the environment components of a Gaussian vector on system x environment.
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  CMatrix g(dim, rank);
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = cplx{normal(rng), normal(rng)};
  }
  CMatrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix(layout, std::move(m));
}

}  // namespace qdemon::states
