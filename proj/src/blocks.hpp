#pragma once

// Block form of a partially measured state: after non-selectively measuring
// a set Q of qubits in product bases, Phi_Q(rho) is block diagonal with one
// unnormalized block per outcome string on the unmeasured qubits. Its
// entropy is the sum of -tr(M log2 M) over the blocks.

#include <vector>

#include "qdemon/density_matrix.hpp"
#include "qdemon/measurement.hpp"
#include "qdemon/simd/kernels.hpp"

namespace qdemon::detail {

struct BlockState {
  std::vector<CMatrix> blocks;
  /// Unmeasured layout positions, ascending; the last is the least significant bit.
  std::vector<std::size_t> remaining;
};

BlockState initial_blocks(const CMatrix& rho, std::size_t n);

/// Measures the qubit at layout `position`; children are ordered parent-major, outcome-minor.
BlockState project(const BlockState& state, std::size_t position, const QubitBasis& basis);

double block_entropy(const BlockState& state);

/// Entropies S(Phi_{q_1..q_k}(rho)) for k = 0..m along the measured sequence.
std::vector<double> prefix_entropies(const CMatrix& rho, std::size_t n, const std::vector<std::size_t>& positions,
                                     const std::vector<QubitBasis>& bases);

inline simd::Hermitian2 as_hermitian2(const CMatrix& m) {
  return {m(0, 0).real(), m(1, 1).real(), m(0, 1).real(), m(0, 1).imag()};
}

}  // namespace qdemon::detail
