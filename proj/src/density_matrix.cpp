#include "qdemon/density_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qdemon/errors.hpp"
#include "qdemon/simd/kernels.hpp"
#include "qdemon/tolerances.hpp"

namespace qdemon {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

}  // namespace

PureState::PureState(SubsystemLayout layout, CVector amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != layout_.dimension()) {
    throw ValidationError("dimension", "amplitude vector length does not match 2^n");
  }
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > kValidationTolerance) {
    throw ValidationError("norm", "state norm is " + format_double(norm));
  }
}

std::optional<std::string> DensityMatrix::check(const SubsystemLayout& layout, const CMatrix& m) {
  const auto dim = static_cast<Eigen::Index>(layout.dimension());
  if (m.rows() != dim || m.cols() != dim) {
    return "dimension: matrix side " + std::to_string(m.rows()) + " does not match 2^n = " + std::to_string(dim);
  }
  if (!m.allFinite()) return std::string("finite: matrix has non-finite entries");
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kValidationTolerance) return "hermitian: max |rho - rho^dagger| = " + format_double(asym);
  const cplx tr = m.trace();
  if (std::abs(tr - cplx{1.0, 0.0}) > kValidationTolerance) {
    return "trace: trace is " + format_double(tr.real());
  }
  const CMatrix herm = 0.5 * (m + m.adjoint());
  const double min_eig = linalg::hermitian_eigenvalues(herm).minCoeff();
  if (min_eig < -kValidationTolerance) return "positivity: smallest eigenvalue " + format_double(min_eig);
  return std::nullopt;
}

DensityMatrix::DensityMatrix(SubsystemLayout layout, CMatrix entries)
    : layout_(std::move(layout)), entries_(std::move(entries)) {
  if (auto violation = check(layout_, entries_)) {
    const auto colon = violation->find(':');
    throw ValidationError(violation->substr(0, colon), violation->substr(colon + 2));
  }
  entries_ = (0.5 * (entries_ + entries_.adjoint())).eval();
}

DensityMatrix::DensityMatrix(const PureState& psi)
    : DensityMatrix(psi.layout(), psi.amplitudes() * psi.amplitudes().adjoint()) {}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  SubsystemLayout layout = a.layout().concat(b.layout());
  const auto& ma = a.matrix();
  const auto& mb = b.matrix();
  CMatrix out(ma.rows() * mb.rows(), ma.cols() * mb.cols());
  for (Eigen::Index i = 0; i < ma.rows(); ++i) {
    for (Eigen::Index j = 0; j < ma.cols(); ++j) {
      out.block(i * mb.rows(), j * mb.cols(), mb.rows(), mb.cols()) = ma(i, j) * mb;
    }
  }
  return DensityMatrix(std::move(layout), std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::string> keep) {
  if (keep.empty()) throw ValidationError("label", "partial trace needs a non-empty keep set");
  const auto& layout = rho.layout();
  std::vector<std::size_t> kept = layout.positions(keep);
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw ValidationError("label", "duplicate label in keep set");
  }
  std::vector<std::size_t> traced;
  for (std::size_t p = 0; p < layout.size(); ++p) {
    if (!std::binary_search(kept.begin(), kept.end(), p)) traced.push_back(p);
  }
  return DensityMatrix(layout.subset(kept), linalg::trace_out(rho.matrix(), layout.size(), traced));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<std::string> keep) {
  std::vector<std::string> labels(keep);
  return partial_trace(rho, std::span<const std::string>(labels));
}

DensityMatrix permute(const DensityMatrix& rho, std::span<const std::string> order) {
  const auto& layout = rho.layout();
  if (order.size() != layout.size()) throw ValidationError("label", "permutation must list every label once");
  SubsystemLayout target{std::vector<std::string>(order.begin(), order.end())};
  const auto old_pos = layout.positions(order);
  const std::size_t n = layout.size();
  const std::size_t dim = layout.dimension();
  std::vector<std::size_t> source(dim);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    std::size_t old_idx = 0;
    for (std::size_t q = 0; q < n; ++q) {
      const std::size_t bit = (idx >> target.bit(q)) & 1U;
      old_idx |= bit << layout.bit(old_pos[q]);
    }
    source[idx] = old_idx;
  }
  CMatrix out(dim, dim);
  const auto& m = rho.matrix();
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) out(i, j) = m(source[i], source[j]);
  }
  return DensityMatrix(std::move(target), std::move(out));
}

Spectrum spectrum(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho.matrix());
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");
  const auto n = solver.eigenvalues().size();
  Spectrum out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values[k] = solver.eigenvalues()(n - 1 - k);
    out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return out;
}

double von_neumann_entropy(const DensityMatrix& rho) { return linalg::entropy_bits(rho.matrix()); }

double shannon_entropy(std::span<const double> p) {
  double total = 0.0;
  for (double x : p) {
    if (!std::isfinite(x) || x < -kEntropyClip) throw ValidationError("probability", "negative or non-finite entry");
    total += x;
  }
  if (std::abs(total - 1.0) > kValidationTolerance) {
    throw ValidationError("probability", "probabilities sum to " + format_double(total));
  }
  return simd::entropy_bits(p);
}

double binary_entropy(double p) {
  const double pair[2] = {p, 1.0 - p};
  return shannon_entropy(pair);
}

namespace linalg {

Eigen::VectorXd hermitian_eigenvalues(const CMatrix& m) {
  if (m.rows() == 1) return Eigen::VectorXd::Constant(1, m(0, 0).real());
  if (m.rows() == 2) {
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const double half_gap = std::hypot(0.5 * (a - d), std::abs(m(0, 1)));
    Eigen::VectorXd ev(2);
    ev << 0.5 * (a + d) - half_gap, 0.5 * (a + d) + half_gap;
    return ev;
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");
  return solver.eigenvalues();
}

double entropy_bits(const CMatrix& m) {
  const Eigen::VectorXd ev = hermitian_eigenvalues(m);
  return simd::entropy_bits(std::span<const double>(ev.data(), static_cast<std::size_t>(ev.size())));
}

CMatrix trace_out(const CMatrix& m, std::size_t n, std::span<const std::size_t> traced) {
  std::vector<std::size_t> traced_bits;
  std::vector<std::size_t> kept_bits;
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t bit = n - 1 - p;
    if (std::find(traced.begin(), traced.end(), p) != traced.end()) {
      traced_bits.push_back(bit);
    } else {
      kept_bits.push_back(bit);
    }
  }
  // Map a compact index over a bit list (most significant first) to full-index bits.
  auto expand = [](std::size_t compact, const std::vector<std::size_t>& bits) {
    std::size_t full = 0;
    const std::size_t k = bits.size();
    for (std::size_t q = 0; q < k; ++q) full |= ((compact >> (k - 1 - q)) & 1U) << bits[q];
    return full;
  };
  const std::size_t kept_dim = std::size_t{1} << kept_bits.size();
  const std::size_t traced_dim = std::size_t{1} << traced_bits.size();
  std::vector<std::size_t> kept_full(kept_dim), traced_full(traced_dim);
  for (std::size_t r = 0; r < kept_dim; ++r) kept_full[r] = expand(r, kept_bits);
  for (std::size_t t = 0; t < traced_dim; ++t) traced_full[t] = expand(t, traced_bits);

  CMatrix out = CMatrix::Zero(kept_dim, kept_dim);
  for (std::size_t i = 0; i < kept_dim; ++i) {
    for (std::size_t j = 0; j < kept_dim; ++j) {
      cplx acc = 0.0;
      for (std::size_t t = 0; t < traced_dim; ++t) acc += m(kept_full[i] | traced_full[t], kept_full[j] | traced_full[t]);
      out(i, j) = acc;
    }
  }
  return out;
}

void conjugate_qubit(CMatrix& m, std::size_t bit, const Eigen::Matrix2cd& u) {
  const auto dim = static_cast<std::size_t>(m.rows());
  const std::size_t mask = std::size_t{1} << bit;
  for (std::size_t i0 = 0; i0 < dim; ++i0) {
    if (i0 & mask) continue;
    const std::size_t i1 = i0 | mask;
    for (std::size_t c = 0; c < dim; ++c) {
      const cplx a = m(i0, c);
      const cplx b = m(i1, c);
      m(i0, c) = u(0, 0) * a + u(0, 1) * b;
      m(i1, c) = u(1, 0) * a + u(1, 1) * b;
    }
  }
  const Eigen::Matrix2cd ud = u.adjoint();
  for (std::size_t j0 = 0; j0 < dim; ++j0) {
    if (j0 & mask) continue;
    const std::size_t j1 = j0 | mask;
    for (std::size_t r = 0; r < dim; ++r) {
      const cplx a = m(r, j0);
      const cplx b = m(r, j1);
      m(r, j0) = a * ud(0, 0) + b * ud(1, 0);
      m(r, j1) = a * ud(0, 1) + b * ud(1, 1);
    }
  }
}

}  // namespace linalg

}  // namespace qdemon
