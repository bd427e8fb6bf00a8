#ifndef SPANQA_ERRORS_H
#define SPANQA_ERRORS_H

#include <stdexcept>
#include <string>

namespace spanqa {

// Base of all toolkit errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Errors caused by bad user input (files, flags, config). CLI maps these
// to exit code 1; everything else is an internal error (exit code 2).
struct UserError : Error {
  using Error::Error;
};

struct ParseError : UserError {
  ParseError(const std::string& msg, int line)
      : UserError(msg + " (line " + std::to_string(line) + ")"), line(line) {}
  int line;
};

struct FormatError : UserError {
  using UserError::UserError;
};

struct DimensionError : UserError {
  using UserError::UserError;
};

struct ConfigError : UserError {
  using UserError::UserError;
};

struct IoError : UserError {
  using UserError::UserError;
};

// Tree validation failures.
struct CycleError : Error {
  using Error::Error;
};

struct MultiRootError : Error {
  using Error::Error;
};

struct IndexError : Error {
  using Error::Error;
};

struct NonProjectiveError : Error {
  using Error::Error;
};

// Linking / decoding.
struct ContainmentError : Error {
  using Error::Error;
};

struct InfeasibleError : Error {
  using Error::Error;
};

struct TooLargeError : Error {
  using Error::Error;
};

struct NotFittedError : Error {
  using Error::Error;
};

}  // namespace spanqa

#endif  // SPANQA_ERRORS_H
