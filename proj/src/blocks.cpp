#include "blocks.hpp"

#include <algorithm>

namespace qdemon::detail {

BlockState initial_blocks(const CMatrix& rho, std::size_t n) {
  BlockState s;
  s.blocks.push_back(rho);
  for (std::size_t p = 0; p < n; ++p) s.remaining.push_back(p);
  return s;
}

BlockState project(const BlockState& state, std::size_t position, const QubitBasis& basis) {
  const auto it = std::find(state.remaining.begin(), state.remaining.end(), position);
  const auto bit = static_cast<std::size_t>(state.remaining.end() - it) - 1;
  const std::size_t mask = std::size_t{1} << bit;

  BlockState out;
  out.remaining = state.remaining;
  out.remaining.erase(out.remaining.begin() + (it - state.remaining.begin()));
  out.blocks.reserve(state.blocks.size() * 2);

  const std::size_t half = std::size_t{1} << out.remaining.size();
  std::vector<std::size_t> lo(half);
  for (std::size_t i = 0; i < half; ++i) {
    // insert a zero at `bit`
    lo[i] = ((i >> bit) << (bit + 1)) | (i & (mask - 1));
  }
  for (const auto& m : state.blocks) {
    for (int x = 0; x < 2; ++x) {
      const Eigen::Vector2cd v = basis.vector(x);
      const cplx c00 = std::conj(v(0)) * v(0);
      const cplx c01 = std::conj(v(0)) * v(1);
      const cplx c10 = std::conj(v(1)) * v(0);
      const cplx c11 = std::conj(v(1)) * v(1);
      CMatrix child(half, half);
      for (std::size_t i = 0; i < half; ++i) {
        const std::size_t i0 = lo[i];
        const std::size_t i1 = i0 | mask;
        for (std::size_t k = 0; k < half; ++k) {
          const std::size_t k0 = lo[k];
          const std::size_t k1 = k0 | mask;
          child(i, k) = c00 * m(i0, k0) + c01 * m(i0, k1) + c10 * m(i1, k0) + c11 * m(i1, k1);
        }
      }
      out.blocks.push_back(std::move(child));
    }
  }
  return out;
}

double block_entropy(const BlockState& state) {
  if (state.remaining.empty()) {
    std::vector<double> p;
    p.reserve(state.blocks.size());
    for (const auto& b : state.blocks) p.push_back(b(0, 0).real());
    return simd::entropy_bits(p);
  }
  double s = 0.0;
  for (const auto& b : state.blocks) s += linalg::entropy_bits(b);
  return s;
}

std::vector<double> prefix_entropies(const CMatrix& rho, std::size_t n, const std::vector<std::size_t>& positions,
                                     const std::vector<QubitBasis>& bases) {
  BlockState s = initial_blocks(rho, n);
  std::vector<double> out{block_entropy(s)};
  for (std::size_t k = 0; k < positions.size(); ++k) {
    s = project(s, positions[k], bases[k]);
    out.push_back(block_entropy(s));
  }
  return out;
}

}  // namespace qdemon::detail
