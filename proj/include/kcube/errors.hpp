#pragma once

#include <stdexcept>
#include <string>

namespace kcube {

// Malformed input: bad digits, inconsistent spec files, unparsable flags.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A stated hypothesis of a lemma/theorem/primitive does not hold.
// `clause` names the violated clause, e.g. "|M| <= 4n-20".
struct PreconditionError : std::runtime_error {
  std::string clause;
  explicit PreconditionError(std::string c)
      : std::runtime_error("precondition violated: " + c), clause(std::move(c)) {}
};

// Instance is larger than the configured provider/oracle ceiling.
struct CapabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Search node budget exhausted; inconclusive, never a refutation.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Internal alarm: a step the underlying theorems guarantee has failed
// (empty choice scan under strict policy, provider Exhausted on a valid
// instance, certificate assembly producing a non-path).  Indicates a bug
// or an instance outside the counting regime of the proofs.
struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace kcube
