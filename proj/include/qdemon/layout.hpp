#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qdemon {

/// Maximum number of qubits supported by the dense representation.
inline constexpr std::size_t kMaxQubits = 10;

/// Ordered qubit labels of a tensor-product space.
///
/// The first label is the most significant bit of a flat basis index, so
/// on labels (A, B, C) the index 1 is |001>, i.e. C excited.
class SubsystemLayout {
 public:
  SubsystemLayout() = default;
  explicit SubsystemLayout(std::vector<std::string> labels);

  /// Default labels A, B, C, ... for n qubits.
  static SubsystemLayout qubits(std::size_t n);

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t dimension() const noexcept { return std::size_t{1} << labels_.size(); }
  /// Local dimension of every subsystem.
  static constexpr std::size_t local_dimension() noexcept { return 2; }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t position) const { return labels_.at(position); }

  bool contains(std::string_view label) const noexcept;
  /// Position of `label`; throws ValidationError("label") if absent.
  std::size_t position(std::string_view label) const;
  std::vector<std::size_t> positions(std::span<const std::string> labels) const;

  /// Bit index (0 = least significant) of the subsystem at `position`.
  std::size_t bit(std::size_t position) const noexcept { return labels_.size() - 1 - position; }

  std::vector<int> unflatten(std::size_t index) const;
  std::size_t flatten(std::span<const int> digits) const;

  /// Layout of this followed by `other`; throws on a label collision.
  SubsystemLayout concat(const SubsystemLayout& other) const;
  /// Layout restricted to `positions`, kept in ascending position order.
  SubsystemLayout subset(std::span<const std::size_t> positions) const;

  friend bool operator==(const SubsystemLayout&, const SubsystemLayout&) = default;

 private:
  std::vector<std::string> labels_;
};

}  // namespace qdemon
