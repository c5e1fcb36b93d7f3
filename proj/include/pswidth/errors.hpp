#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace psw {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed DIMACS / decomposition / ordering text.
class ParseError : public Error {
  public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

/// A structurally invalid decomposition, ordering or argument.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// Refusal to run an exponential procedure above its hard limit.
class LimitError : public Error {
  public:
    using Error::Error;
};

/// Broken internal invariant, e.g. a reconstructed table index that is
/// missing from a child's family.
class InternalError : public Error {
  public:
    using Error::Error;
};

} // namespace psw
