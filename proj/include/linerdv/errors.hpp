#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace linerdv {

// Bad user input: malformed config documents, out-of-range parameters.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An operation was invoked outside its stated applicability.
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Text that does not match the scalar grammar. `position` is the byte
// offset of the offending character.
struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
  std::size_t position;
};

// The simulation cannot make progress: no co-location ahead and no
// scheduled boundary while robots are still apart.
struct StallError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A broken internal invariant. Always a bug.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace linerdv
