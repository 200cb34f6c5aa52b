#pragma once

#include <stdexcept>
#include <string>

namespace stodom {

// Bad caller input: malformed measures, mismatched spaces, invalid maps.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An exact computation would exceed its configured enumeration cap.
struct SizeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A precondition of a coupling construction does not hold.
// `which` names the failed assumption ("A", "B", "C", "one-column", ...),
// `witness` describes the first violation found.
struct AssumptionError : std::runtime_error {
  std::string which;
  std::string witness;
  AssumptionError(std::string which_, std::string witness_)
      : std::runtime_error("assumption " + which_ + " fails: " + witness_),
        which(std::move(which_)),
        witness(std::move(witness_)) {}
};

// A path lift hit a dead end; `step` is the index of the first unliftable step.
struct LiftStepError : std::runtime_error {
  int step;
  explicit LiftStepError(int step_)
      : std::runtime_error("no lift exists at path step " + std::to_string(step_)),
        step(step_) {}
};

// Invariant that should hold by construction was violated; always a bug.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace stodom
