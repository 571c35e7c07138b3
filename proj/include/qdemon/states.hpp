#pragma once

#include <cstdint>
#include <span>

#include "qdemon/density_matrix.hpp"

namespace qdemon::states {

/// alpha|0...0> + beta|1...1> with beta = sqrt(1 - |alpha|^2) real, n >= 2.
PureState schmidt(std::size_t n, cplx alpha);
/// Same family parameterized by the weight |alpha|^2 in [0, 1].
PureState schmidt_weight(std::size_t n, double alpha_squared);

/// (|0...0> - |1...1>)/sqrt(2).
PureState ghz(std::size_t n);
/// (|001> + |010> + |100>)/sqrt(3).
PureState w();

/// (1 - lambda)/8 I + lambda |GHZ><GHZ| on three qubits.
DensityMatrix werner_ghz(double lambda);
/// lambda |W><W| + (1 - lambda) |GHZ><GHZ|.
DensityMatrix w_ghz(double lambda);

/// Diagonal state sum_k p_k |k><k|; the table length must be 2^n.
DensityMatrix classical(std::span<const double> probabilities);

/// Haar-random pure state, deterministic per seed.
PureState random_pure(std::size_t n, std::uint64_t seed);
/// Reduced state of a Haar-random pure state on the system and a rank-dimensional
/// environment; rank in [1, 2^n].
DensityMatrix random_mixed(std::size_t n, std::size_t rank, std::uint64_t seed);

}  // namespace qdemon::states
