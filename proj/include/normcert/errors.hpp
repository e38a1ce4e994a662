#pragma once

#include <stdexcept>
#include <string>

namespace normcert {

/// Caller passed arguments that violate an operation's contract.
class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A size guard was exceeded; the computation was not attempted.
class inconclusive_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace normcert
