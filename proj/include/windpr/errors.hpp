// Copyright 2026 The windpr authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef WINDPR_ERRORS_HPP_
#define WINDPR_ERRORS_HPP_

#include <stdexcept>

namespace windpr {

// File-level failures: missing files, short reads, malformed containers.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A structurally valid WAV whose sample encoding we do not process.
struct UnsupportedWavError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Violation of an internal call contract (mismatched bin counts etc).
struct ContractError : std::logic_error {
  using std::logic_error::logic_error;
};

// Invalid physical/config parameters are reported as std::invalid_argument.

}  // namespace windpr

#endif  // WINDPR_ERRORS_HPP_
