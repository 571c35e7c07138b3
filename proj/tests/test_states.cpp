#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "qdemon/errors.hpp"
#include "qdemon/states.hpp"

using namespace qdemon;
using oracle::Mat;

TEST_CASE("Schmidt states") {
  const auto s = states::schmidt(3, M_SQRT1_2);
  const auto g = states::ghz(3);
  CHECK(std::abs(s.amplitudes().dot(g.amplitudes())) < 1e-15);
  CHECK(std::abs(s.amplitudes()(0) - g.amplitudes()(0)) < 1e-15);
  CHECK(std::abs(s.amplitudes()(7) + g.amplitudes()(7)) < 1e-15);

  const auto zero = states::schmidt(2, 1.0);
  CHECK(std::abs(zero.amplitudes()(0) - 1.0) < 1e-15);

  const auto rho = testing::pure(states::schmidt_weight(4, 0.25));
  for (const auto& l : rho.layout().labels()) {
    const auto marginal = partial_trace(rho, {l}).matrix();
    CHECK(std::abs(marginal(0, 0) - 0.25) < 1e-12);
    CHECK(std::abs(marginal(1, 1) - 0.75) < 1e-12);
    CHECK(std::abs(marginal(0, 1)) < 1e-12);
  }
  CHECK_THROWS_AS(states::schmidt_weight(3, 1.5), ValidationError);
  CHECK_THROWS_AS(states::schmidt(1, 1.0), ValidationError);
}

TEST_CASE("GHZ and W") {
  const auto g2 = states::ghz(2);
  CHECK(std::abs(g2.amplitudes()(0) - M_SQRT1_2) < 1e-15);
  CHECK(std::abs(g2.amplitudes()(3) + M_SQRT1_2) < 1e-15);
  const auto w = states::w();
  for (int i : {1, 2, 4}) CHECK(std::abs(w.amplitudes()(i) - 1.0 / std::sqrt(3.0)) < 1e-15);
  CHECK(std::abs(w.amplitudes().norm() - 1.0) < 1e-15);
}

TEST_CASE("mixtures") {
  CHECK(oracle::max_abs(states::werner_ghz(0.0).matrix() - Mat::Identity(8, 8) / 8.0) < 1e-15);
  const Mat ghz = testing::pure(states::ghz(3)).matrix();
  CHECK(oracle::max_abs(states::werner_ghz(1.0).matrix() - ghz) < 1e-15);
  CHECK(oracle::max_abs(states::w_ghz(1.0).matrix() - testing::pure(states::w()).matrix()) < 1e-15);
  CHECK(oracle::max_abs(states::w_ghz(0.0).matrix() - ghz) < 1e-15);
  CHECK_THROWS_AS(states::werner_ghz(-0.1), ValidationError);
  CHECK_THROWS_AS(states::w_ghz(1.1), ValidationError);

  for (double lambda : {0.0, 0.2, 0.5, 0.9, 1.0}) {
    const auto s = spectrum(states::werner_ghz(lambda));
    CHECK(std::abs(s.values[0] - (1.0 + 7.0 * lambda) / 8.0) < 1e-10);
    for (std::size_t i = 1; i < 8; ++i) CHECK(std::abs(s.values[i] - (1.0 - lambda) / 8.0) < 1e-10);
  }
}

TEST_CASE("classical states") {
  const std::vector<double> corr{0.5, 0.0, 0.0, 0.5};
  const auto c = states::classical(corr);
  CHECK(c.qubits() == 2);
  CHECK(c.matrix()(0, 0) == 0.5);
  CHECK(c.matrix()(3, 3) == 0.5);
  const std::vector<double> uniform(8, 0.125);
  CHECK(oracle::max_abs(states::classical(uniform).matrix() - Mat::Identity(8, 8) / 8.0) < 1e-15);
  const std::vector<double> odd{0.5, 0.25, 0.25};
  CHECK_THROWS_AS(states::classical(odd), ValidationError);
  const std::vector<double> unnormalized{0.5, 0.6};
  CHECK_THROWS_AS(states::classical(unnormalized), ValidationError);
}

TEST_CASE("random states") {
  const auto a = states::random_mixed(3, 1, 42);
  CHECK(std::abs(von_neumann_entropy(a)) < 1e-10);
  CHECK(a.matrix() == states::random_mixed(3, 1, 42).matrix());
  CHECK(a.matrix() != states::random_mixed(3, 1, 43).matrix());
  CHECK(states::random_pure(2, 9).amplitudes() == states::random_pure(2, 9).amplitudes());

  double mean = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) mean += von_neumann_entropy(states::random_mixed(3, 8, seed));
  CHECK(mean / 20.0 > 2.0);

  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto rho = testing::random_state(2 + seed % 3, seed);
    CHECK_FALSE(DensityMatrix::check(rho.layout(), rho.matrix()).has_value());
  }
  CHECK_THROWS_AS(states::random_mixed(2, 0, 1), ValidationError);
  CHECK_THROWS_AS(states::random_mixed(2, 5, 1), ValidationError);
}
