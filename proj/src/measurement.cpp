#include "qdemon/measurement.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "qdemon/errors.hpp"
#include "qdemon/tolerances.hpp"

namespace qdemon {

namespace {

constexpr double kPi = std::numbers::pi;

struct ResolvedSpec {
  std::vector<std::size_t> positions;
  std::vector<QubitBasis> bases;
};

ResolvedSpec resolve(const SubsystemLayout& layout, const ProductBasisSpec& spec) {
  ResolvedSpec r;
  for (const auto& label : spec.measured_labels(layout)) {
    r.positions.push_back(layout.position(label));
    r.bases.push_back(spec.bases.at(label));
  }
  return r;
}

void rotate_into(CMatrix& m, std::size_t n, const ResolvedSpec& r, bool forward) {
  for (std::size_t k = 0; k < r.positions.size(); ++k) {
    const Eigen::Matrix2cd u = forward ? r.bases[k].rotation() : Eigen::Matrix2cd(r.bases[k].rotation().adjoint());
    linalg::conjugate_qubit(m, n - 1 - r.positions[k], u);
  }
}

}  // namespace

QubitBasis::QubitBasis(double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi)) throw ValidationError("angle", "basis angles must be finite");
  theta = std::fmod(theta, 2.0 * kPi);
  if (theta < 0.0) theta += 2.0 * kPi;
  if (theta > kPi) {
    theta = 2.0 * kPi - theta;
    phi += kPi;
  }
  phi = std::fmod(phi, 2.0 * kPi);
  if (phi < 0.0) phi += 2.0 * kPi;
  if (phi >= 2.0 * kPi) phi = 0.0;
  theta_ = theta;
  phi_ = phi;
}

QubitBasis QubitBasis::from_vector(const Eigen::Vector2cd& v) {
  const double a = std::abs(v(0));
  const double b = std::abs(v(1));
  if (a + b == 0.0) throw ValidationError("norm", "zero basis vector");
  const double theta = 2.0 * std::atan2(b, a);
  const double phi = (a > 0.0 && b > 0.0) ? std::arg(v(1)) - std::arg(v(0)) : 0.0;
  return QubitBasis(theta, phi);
}

Eigen::Vector2cd QubitBasis::vector(int outcome) const {
  const double c = std::cos(0.5 * theta_);
  const double s = std::sin(0.5 * theta_);
  const cplx phase = std::polar(1.0, phi_);
  if (outcome == 0) return Eigen::Vector2cd(c, phase * s);
  return Eigen::Vector2cd(s, -phase * c);
}

Eigen::Matrix2cd QubitBasis::projector(int outcome) const {
  const Eigen::Vector2cd v = vector(outcome);
  return v * v.adjoint();
}

Eigen::Matrix2cd QubitBasis::rotation() const {
  Eigen::Matrix2cd u;
  u.row(0) = vector(0).adjoint();
  u.row(1) = vector(1).adjoint();
  return u;
}

std::vector<std::string> ProductBasisSpec::measured_labels(const SubsystemLayout& layout) const {
  for (const auto& [label, basis] : bases) layout.position(label);
  std::vector<std::string> out;
  for (const auto& label : layout.labels()) {
    if (measures(label)) out.push_back(label);
  }
  return out;
}

bool ProductBasisSpec::covers(const SubsystemLayout& layout) const {
  return measured_labels(layout).size() == layout.size();
}

std::string ProductBasisSpec::describe(const SubsystemLayout& layout, int precision) const {
  std::string out;
  char buf[96];
  for (const auto& label : measured_labels(layout)) {
    const auto& b = bases.at(label);
    std::snprintf(buf, sizeof buf, "%s%s:%.*g,%.*g", out.empty() ? "" : ";", label.c_str(), precision, b.theta(),
                  precision, b.phi());
    out += buf;
  }
  return out;
}

ProductBasisSpec uniform_spec(const std::vector<std::string>& labels, QubitBasis basis) {
  ProductBasisSpec spec;
  for (const auto& l : labels) spec.bases[l] = basis;
  return spec;
}

namespace linalg {

void dephase(CMatrix& m, std::size_t n, const std::vector<std::size_t>& positions,
             const std::vector<QubitBasis>& bases) {
  const ResolvedSpec r{positions, bases};
  rotate_into(m, n, r, true);
  std::size_t mask = 0;
  for (auto p : positions) mask |= std::size_t{1} << (n - 1 - p);
  const auto dim = static_cast<std::size_t>(m.rows());
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      if (((i ^ j) & mask) != 0) m(i, j) = 0.0;
    }
  }
  rotate_into(m, n, r, false);
}

}  // namespace linalg

DensityMatrix apply_channel(const DensityMatrix& rho, const ProductBasisSpec& spec) {
  const auto r = resolve(rho.layout(), spec);
  CMatrix m = rho.matrix();
  linalg::dephase(m, rho.qubits(), r.positions, r.bases);
  return DensityMatrix(rho.layout(), std::move(m));
}

std::vector<MeasurementOutcome> selective_outcomes(const DensityMatrix& rho, const ProductBasisSpec& spec) {
  const auto& layout = rho.layout();
  const auto r = resolve(layout, spec);
  const std::size_t n = layout.size();
  const std::size_t m = r.positions.size();
  CMatrix rotated = rho.matrix();
  rotate_into(rotated, n, r, true);

  const auto dim = static_cast<std::size_t>(rotated.rows());
  std::vector<MeasurementOutcome> outcomes;
  outcomes.reserve(std::size_t{1} << m);
  for (std::size_t x = 0; x < (std::size_t{1} << m); ++x) {
    std::size_t want = 0;
    std::size_t mask = 0;
    MeasurementOutcome out;
    for (std::size_t k = 0; k < m; ++k) {
      const int digit = static_cast<int>((x >> (m - 1 - k)) & 1U);
      out.outcome.push_back(digit);
      const std::size_t bit = std::size_t{1} << (n - 1 - r.positions[k]);
      mask |= bit;
      if (digit) want |= bit;
    }
    CMatrix block = CMatrix::Zero(dim, dim);
    double p = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      if ((i & mask) != want) continue;
      p += rotated(i, i).real();
      for (std::size_t j = 0; j < dim; ++j) {
        if ((j & mask) == want) block(i, j) = rotated(i, j);
      }
    }
    out.probability = std::max(p, 0.0);
    if (p >= kOutcomeCutoff) {
      block /= p;
      rotate_into(block, n, r, false);
      out.post_state.emplace(layout, std::move(block));
    }
    outcomes.push_back(std::move(out));
  }
  return outcomes;
}

MidBasis mid_basis(const DensityMatrix& rho, const std::vector<std::string>& measured) {
  MidBasis mid;
  for (const auto& label : measured) {
    const std::vector<std::string> keep{label};
    const auto marginal = partial_trace(rho, keep);
    const auto spec = spectrum(marginal);
    if (spec.values[0] - spec.values[1] < kDegeneracyGap) {
      mid.spec.bases[label] = QubitBasis::computational();
      mid.degenerate.push_back(label);
    } else {
      mid.spec.bases[label] = QubitBasis::from_vector(spec.vectors.col(0));
    }
  }
  return mid;
}

MidBasis mid_basis(const DensityMatrix& rho) { return mid_basis(rho, rho.layout().labels()); }

}  // namespace qdemon
