#pragma once

#include <stdexcept>
#include <string>

namespace qdemon {

/// A value violates a documented invariant (trace, hermiticity, label, range, ...).
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string invariant, const std::string& detail)
      : std::invalid_argument(invariant + ": " + detail), invariant_(std::move(invariant)) {}

  /// Short name of the violated invariant, e.g. "trace" or "label".
  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

/// An eigensolver or minimizer failed to produce a usable result.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qdemon
