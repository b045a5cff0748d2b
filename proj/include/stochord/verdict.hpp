#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stochord {

/// Concrete data that violates a checked inequality `lhs <= rhs`.
///
/// `coords` names the points that define the violating configuration, e.g.
/// `{"x", 1.5}, {"y", 2.5}, {"z", 3.5}` for an interval triple. `lhs` and `rhs`
/// are the two sides of the inequality as evaluated by the checker.
struct Witness {
  std::vector<std::pair<std::string, double>> coords;
  double lhs = 0.0;
  double rhs = 0.0;

  double coord(const std::string& name) const {
    for (const auto& [key, value] : coords) {
      if (key == name) return value;
    }
    throw std::out_of_range("witness has no coordinate '" + name + "'");
  }
};

/// Outcome of an order / positivity check. `holds == false` iff a witness is present.
struct OrderVerdict {
  bool holds = true;
  std::optional<Witness> witness;
  std::string method;

  static OrderVerdict pass(std::string method) { return {true, std::nullopt, std::move(method)}; }
  static OrderVerdict fail(std::string method, Witness w) {
    return {false, std::move(w), std::move(method)};
  }
};

class InvalidDistribution : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an operation does not hold. Carries the
/// configuration that breaks it.
class PreconditionError : public std::runtime_error {
 public:
  PreconditionError(const std::string& what, Witness witness)
      : std::runtime_error(what), witness_(std::move(witness)) {}

  const Witness& witness() const noexcept { return witness_; }

 private:
  Witness witness_;
};

}  // namespace stochord
