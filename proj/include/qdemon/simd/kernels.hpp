#pragma once

// Data-parallel inner loops of the entropy and basis-search code.
//
// Every kernel has a scalar reference in namespace `scalar` and, on x86-64
// builds, an AVX2+FMA variant in namespace `avx2`. The unqualified entry
// points dispatch once per process on CPU support; setting the environment
// variable QDEMON_FORCE_SCALAR=1 pins the scalar path.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace qdemon::simd {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;
/// True when this binary carries AVX2 kernels and the CPU runs them.
bool avx2_supported() noexcept;
/// Instruction set chosen by the dispatcher.
Isa active_isa() noexcept;

/// Unnormalized 2x2 Hermitian block [[d0, re + i im], [re - i im, d1]].
struct Hermitian2 {
  double d0 = 0.0;
  double d1 = 0.0;
  double re = 0.0;
  double im = 0.0;
};

/// Structure-of-arrays view of projection directions |v> = (c, e^{i phi} s).
///
/// For direction k: c2 = c^2, s2 = s^2, cross_re = 2cs cos(phi),
/// cross_im = 2cs sin(phi), so <v|M|v> = c2 d0 + s2 d1 + cross_re re - cross_im im.
struct DirectionTable {
  std::vector<double> c2, s2, cross_re, cross_im;

  std::size_t size() const noexcept { return c2.size(); }
  void push_back(double theta, double phi);
};

/// -sum w log2 w over `weights`, skipping entries below the entropy clip.
double entropy_bits(std::span<const double> weights) noexcept;

/// For every direction k, out[k] = sum over blocks of the binary-outcome
/// entropy -p0 log2 p0 - p1 log2 p1 with p0 = <v_k|M|v_k>, p1 = tr M - p0.
/// `out` must have dirs.size() entries.
void projected_pair_entropy(std::span<const Hermitian2> blocks, const DirectionTable& dirs,
                            std::span<double> out) noexcept;

namespace scalar {
double entropy_bits(std::span<const double> weights) noexcept;
void projected_pair_entropy(std::span<const Hermitian2> blocks, const DirectionTable& dirs,
                            std::span<double> out) noexcept;
}  // namespace scalar

namespace avx2 {
// Only callable when avx2_supported() is true.
double entropy_bits(std::span<const double> weights) noexcept;
void projected_pair_entropy(std::span<const Hermitian2> blocks, const DirectionTable& dirs,
                            std::span<double> out) noexcept;
}  // namespace avx2

}  // namespace qdemon::simd
