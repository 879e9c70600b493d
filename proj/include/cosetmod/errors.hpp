#pragma once

#include <stdexcept>
#include <string>

namespace cosetmod {

/// A numeric consistency check failed (unitarity, integrality, ...).
struct CheckFailure : std::runtime_error {
  explicit CheckFailure(const std::string& what) : std::runtime_error(what) {}
};

/// A standing hypothesis required by a classification result does not hold.
struct HypothesisViolation : std::runtime_error {
  explicit HypothesisViolation(const std::string& what) : std::runtime_error(what) {}
};

/// Input exceeds the scale this implementation is designed for.
struct ScaleGuard : std::runtime_error {
  explicit ScaleGuard(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cosetmod
