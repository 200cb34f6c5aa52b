#pragma once

#include <string>

namespace stodom::run {

enum class RunStatus {
  ok = 0,            // every assertion in the command passed
  check_failed = 1,  // a mathematical assertion failed (certificate in report)
  input_error = 2,
  size_error = 3,
  internal_error = 4,
};

struct RunOutcome {
  RunStatus status = RunStatus::internal_error;
  std::string report_json;  // present when a report was produced
  std::string error;        // present on input/size/internal errors
};

// Executes one experiment described by a JSON config with a "command" field:
// verify, coupling, lakon-sweep, perco-compare, cells, delta, aug-compare,
// bk, cycles. Reports are deterministic functions of the config (randomized
// commands require an explicit "seed"); the "jobs" field only affects wall
// time, never any reported value.
RunOutcome run_experiment(const std::string& config_json);

}  // namespace stodom::run
