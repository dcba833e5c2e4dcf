#pragma once

#include <stdexcept>
#include <string>

namespace lauricella {

/// Failure categories. Each maps to one CLI exit code.
enum class ErrorKind {
  Parse,              ///< malformed textual input
  Validation,         ///< input outside an operation's domain
  DivisionByZero,     ///< exact inversion of zero
  ConductorOverflow,  ///< cyclotomic conductor above the configured cap
  Numerical,          ///< tolerance not reached / precision ladder exhausted
  ResourceCap,        ///< closure bound or enumeration cap exceeded
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(ErrorKind::Parse,
              what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::Validation:
    case ErrorKind::DivisionByZero:
      return 2;
    case ErrorKind::Numerical:
      return 3;
    case ErrorKind::ConductorOverflow:
    case ErrorKind::ResourceCap:
      return 4;
  }
  return 1;
}

}  // namespace lauricella
