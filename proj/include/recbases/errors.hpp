#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace recbases {

// Root of everything the library throws on purpose. The module tag lets the
// CLI print "contfrac: ..." style messages.
class Error : public std::runtime_error {
 public:
  Error(std::string module, const std::string& what)
      : std::runtime_error(module + ": " + what), module_(std::move(module)) {}
  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

// Bad input or violated precondition. CLI exit code 1.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Anything that means "ran out of digits or bits". CLI exit code 2.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

class PrecisionExhausted : public PrecisionError {
 public:
  PrecisionExhausted(std::string module, const std::string& what, unsigned bits)
      : PrecisionError(std::move(module), what + " (bits=" + std::to_string(bits) + ")"), bits_(bits) {}
  unsigned bits() const noexcept { return bits_; }

 private:
  unsigned bits_;
};

class Undecidable : public PrecisionError {
 public:
  Undecidable(std::string module, const std::string& what, unsigned max_precision)
      : PrecisionError(std::move(module), what + " (max_precision=" + std::to_string(max_precision) + ")"),
        max_precision_(max_precision) {}
  unsigned max_precision() const noexcept { return max_precision_; }

 private:
  unsigned max_precision_;
};

class RationalTerminated : public InvalidArgument {
 public:
  RationalTerminated(std::string module, std::size_t length)
      : InvalidArgument(std::move(module), "rational expansion terminates after " + std::to_string(length) + " digits"),
        length_(length) {}
  std::size_t length() const noexcept { return length_; }

 private:
  std::size_t length_;
};

class InvalidParity : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class DegenerateAlpha : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Digit exceeded the stated bound, so bounded-digit arguments do not apply.
class UnboundedDigits : public Error {
 public:
  using Error::Error;
};

class PatternNotFound : public Error {
 public:
  using Error::Error;
};

class ScheduleInfeasible : public Error {
 public:
  using Error::Error;
};

class BranchExhausted : public Error {
 public:
  BranchExhausted(std::string module, const std::string& what, std::size_t level)
      : Error(std::move(module), what + " (level=" + std::to_string(level) + ")"), level_(level) {}
  std::size_t level() const noexcept { return level_; }

 private:
  std::size_t level_;
};

class ResourceLimit : public Error {
 public:
  using Error::Error;
};

}  // namespace recbases
