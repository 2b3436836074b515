#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cevm {

// Base of every error thrown by the library. The CLI maps subclasses onto
// exit codes, so new failure modes should derive from one of these.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite input or malformed argument (wrong length, unsorted grid, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Input outside the mathematical domain of the operation (p outside (0,1),
// x below the Pareto support, unsupported example/branch combination).
class DomainError : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  InsufficientData(const std::string& what, std::size_t have, std::size_t need)
      : Error(what + " (have " + std::to_string(have) + ", need " +
              std::to_string(need) + ")"),
        have_(have),
        need_(need) {}

  std::size_t have() const noexcept { return have_; }
  std::size_t need() const noexcept { return need_; }

 private:
  std::size_t have_;
  std::size_t need_;
};

// Root bracketing or iterative inversion did not converge.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace cevm
