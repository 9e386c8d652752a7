#pragma once

#include <stdexcept>
#include <string>

namespace recseq {

// Malformed configuration, bad parameters or schema violations.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A mathematical precondition does not hold (degenerate input, values outside
// a function's domain, distributions outside the space an operation needs).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The distribution is not in H*: some record expectation is infinite or the
// quantile is constant.
class MembershipError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A numerical procedure could not reach its requested accuracy.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace recseq
