#include <cmath>

#include "qdemon/simd/kernels.hpp"
#include "qdemon/tolerances.hpp"

namespace qdemon::simd {

void DirectionTable::push_back(double theta, double phi) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  c2.push_back(c * c);
  s2.push_back(s * s);
  cross_re.push_back(2.0 * c * s * std::cos(phi));
  cross_im.push_back(2.0 * c * s * std::sin(phi));
}

namespace scalar {

namespace {

inline double neg_xlog2x(double w) noexcept { return w < kEntropyClip ? 0.0 : -w * std::log2(w); }

}  // namespace

double entropy_bits(std::span<const double> weights) noexcept {
  double acc = 0.0;
  for (double w : weights) acc += neg_xlog2x(w);
  return acc;
}

void projected_pair_entropy(std::span<const Hermitian2> blocks, const DirectionTable& dirs,
                            std::span<double> out) noexcept {
  const std::size_t n = dirs.size();
  for (std::size_t k = 0; k < n; ++k) {
    double acc = 0.0;
    for (const auto& b : blocks) {
      const double p0 = dirs.c2[k] * b.d0 + dirs.s2[k] * b.d1 + dirs.cross_re[k] * b.re - dirs.cross_im[k] * b.im;
      const double p1 = (b.d0 + b.d1) - p0;
      acc += neg_xlog2x(p0) + neg_xlog2x(p1);
    }
    out[k] = acc;
  }
}

}  // namespace scalar
}  // namespace qdemon::simd
