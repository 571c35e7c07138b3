#include "qdemon/layout.hpp"

#include <algorithm>
#include <set>

#include "qdemon/errors.hpp"

namespace qdemon {

SubsystemLayout::SubsystemLayout(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.size() > kMaxQubits) {
    throw ValidationError("dimension", "at most " + std::to_string(kMaxQubits) + " qubits supported");
  }
  std::set<std::string_view> seen;
  for (const auto& l : labels_) {
    if (l.empty()) throw ValidationError("label", "empty subsystem label");
    if (!seen.insert(l).second) throw ValidationError("label", "duplicate subsystem label '" + l + "'");
  }
}

SubsystemLayout SubsystemLayout::qubits(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t k = 0; k < n; ++k) labels.emplace_back(1, static_cast<char>('A' + k));
  return SubsystemLayout(std::move(labels));
}

bool SubsystemLayout::contains(std::string_view label) const noexcept {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t SubsystemLayout::position(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw ValidationError("label", "unknown subsystem label '" + std::string(label) + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

std::vector<std::size_t> SubsystemLayout::positions(std::span<const std::string> labels) const {
  std::vector<std::size_t> out;
  out.reserve(labels.size());
  for (const auto& l : labels) out.push_back(position(l));
  return out;
}

std::vector<int> SubsystemLayout::unflatten(std::size_t index) const {
  std::vector<int> digits(size());
  for (std::size_t p = 0; p < size(); ++p) digits[p] = static_cast<int>((index >> bit(p)) & 1U);
  return digits;
}

std::size_t SubsystemLayout::flatten(std::span<const int> digits) const {
  std::size_t index = 0;
  for (int d : digits) index = (index << 1) | static_cast<std::size_t>(d & 1);
  return index;
}

SubsystemLayout SubsystemLayout::concat(const SubsystemLayout& other) const {
  std::vector<std::string> labels = labels_;
  for (const auto& l : other.labels_) {
    if (contains(l)) throw ValidationError("label", "label collision on '" + l + "'");
    labels.push_back(l);
  }
  return SubsystemLayout(std::move(labels));
}

SubsystemLayout SubsystemLayout::subset(std::span<const std::size_t> positions) const {
  std::vector<std::size_t> sorted(positions.begin(), positions.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::string> labels;
  for (auto p : sorted) labels.push_back(labels_.at(p));
  return SubsystemLayout(std::move(labels));
}

}  // namespace qdemon
