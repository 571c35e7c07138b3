#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qdemon/density_matrix.hpp"
#include "qdemon/measurement.hpp"
#include "qdemon/states.hpp"

namespace testing {

inline qdemon::DensityMatrix pure(const qdemon::PureState& psi) { return qdemon::DensityMatrix(psi); }

inline qdemon::DensityMatrix from_matrix(std::size_t n, const oracle::Mat& m) {
  return qdemon::DensityMatrix(qdemon::SubsystemLayout::qubits(n), m);
}

inline qdemon::DensityMatrix bell() {
  oracle::Mat m = oracle::Mat::Zero(4, 4);
  m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
  return from_matrix(2, m);
}

inline qdemon::DensityMatrix basis_state(std::size_t n, std::size_t index) {
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << n);
  oracle::Mat m = oracle::Mat::Zero(d, d);
  m(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
  return from_matrix(n, m);
}

inline qdemon::QubitBasis random_basis(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return qdemon::QubitBasis(std::acos(1.0 - 2.0 * u(rng)), 2.0 * M_PI * u(rng));
}

inline qdemon::ProductBasisSpec random_spec(const qdemon::SubsystemLayout& layout, std::mt19937_64& rng) {
  qdemon::ProductBasisSpec spec;
  for (const auto& l : layout.labels()) spec.bases[l] = random_basis(rng);
  return spec;
}

inline std::vector<oracle::Angles> angles(const qdemon::SubsystemLayout& layout, const qdemon::ProductBasisSpec& spec) {
  std::vector<oracle::Angles> out;
  for (std::size_t p = 0; p < layout.size(); ++p) {
    const auto it = spec.bases.find(layout.label(p));
    if (it != spec.bases.end()) out.push_back({p, it->second.theta(), it->second.phi()});
  }
  return out;
}

// Random rank between 1 and 2^n, seeded.
inline qdemon::DensityMatrix random_state(std::size_t n, std::uint64_t seed) {
  const std::size_t rank = 1 + static_cast<std::size_t>(seed % (std::size_t{1} << n));
  return qdemon::states::random_mixed(n, rank, seed);
}

}  // namespace testing
