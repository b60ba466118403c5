#pragma once

#include <stdexcept>
#include <string>

namespace endorev {

// A caller-supplied value violates a documented precondition.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A model evaluation produced no finite answer (underflowed denominator,
// overflowing rate, degenerate COP denominator).
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OptimizationError : public std::runtime_error {
 public:
  enum class Kind { BracketFailure, NonConvergence, Multimodal, NonFinite, IllConditioned };

  OptimizationError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

}  // namespace endorev
