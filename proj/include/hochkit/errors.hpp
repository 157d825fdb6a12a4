#pragma once

#include <stdexcept>
#include <string>

namespace hochkit {

// Input fails a structural or axiomatic check (CLI exit code 2).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A mathematical cross-check fails (CLI exit code 3).
struct VerificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A configured size limit is exceeded (CLI exit code 4).
struct ResourceCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace hochkit
