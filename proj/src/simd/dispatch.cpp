#include <cstdlib>
#include <string_view>

#include "qdemon/simd/kernels.hpp"

namespace qdemon::simd {

#if !QDEMON_HAVE_AVX2
namespace avx2 {
double entropy_bits(std::span<const double> weights) noexcept { return scalar::entropy_bits(weights); }
void projected_pair_entropy(std::span<const Hermitian2> blocks, const DirectionTable& dirs,
                            std::span<double> out) noexcept {
  scalar::projected_pair_entropy(blocks, dirs, out);
}
}  // namespace avx2
#endif

namespace {

bool cpu_has_avx2() noexcept {
#if QDEMON_HAVE_AVX2 && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa choose_isa() noexcept {
  const char* force = std::getenv("QDEMON_FORCE_SCALAR");
  if (force != nullptr && std::string_view(force) != "0" && std::string_view(force) != "") return Isa::scalar;
  return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

struct KernelTable {
  Isa isa;
  double (*entropy_bits)(std::span<const double>) noexcept;
  void (*projected_pair_entropy)(std::span<const Hermitian2>, const DirectionTable&, std::span<double>) noexcept;
};

const KernelTable& table() noexcept {
  static const KernelTable t = [] {
    if (choose_isa() == Isa::avx2) {
      return KernelTable{Isa::avx2, &avx2::entropy_bits, &avx2::projected_pair_entropy};
    }
    return KernelTable{Isa::scalar, &scalar::entropy_bits, &scalar::projected_pair_entropy};
  }();
  return t;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool avx2_supported() noexcept { return cpu_has_avx2(); }

Isa active_isa() noexcept { return table().isa; }

double entropy_bits(std::span<const double> weights) noexcept { return table().entropy_bits(weights); }

void projected_pair_entropy(std::span<const Hermitian2> blocks, const DirectionTable& dirs,
                            std::span<double> out) noexcept {
  table().projected_pair_entropy(blocks, dirs, out);
}

}  // namespace qdemon::simd
