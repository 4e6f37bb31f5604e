#pragma once
#include <stdexcept>
#include <string>

namespace qbps {

// Exit-code contract for the CLI:
//   input_error    -> 2  (malformed input, bad arguments, unsupported sectors)
//   budget_error   -> 3  (point budget, congruence refusals, non-polynomial counts)
//   theorem_error  -> 1  (a guaranteed identity failed loudly)
//   internal_error -> 1  (self-consistency failure, signals a bug)
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct theorem_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct internal_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace qbps
