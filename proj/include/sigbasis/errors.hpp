#pragma once

#include <stdexcept>
#include <string>

namespace sigbasis {

// Bad arguments, malformed files, out-of-contract requests. CLI exit code 1.
struct InvalidInput : std::runtime_error {
  explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

// A file or stream could not be parsed / contained non-finite data.
struct DataError : InvalidInput {
  explicit DataError(const std::string& what) : InvalidInput(what) {}
};

// A dual-bracket or Chen combination asked for a word component that the
// signature vector does not carry; the message names the missing word.
struct IncompleteSignature : InvalidInput {
  explicit IncompleteSignature(const std::string& what) : InvalidInput(what) {}
};

// lambda = 0 requested on a numerically singular Gram.
struct SingularFit : std::runtime_error {
  explicit SingularFit(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sigbasis
