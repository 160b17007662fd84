#pragma once

#include <stdexcept>
#include <string>

namespace benford {

// Every failure the library reports carries one of these kinds. The CLI maps
// each kind to its own process exit code (see exit_code()).
enum class ErrorKind {
  Domain,               // non-finite input, out-of-domain argument
  EmptySample,          // no nonzero values left to analyze
  ParameterOutOfRange,  // witness parameter outside its open interval
  WrongCase,            // operation requested for the wrong range case
  UnsupportedSpec,      // distribution family lacks the requested property
  MissingFile,
  UnknownColumn,
  NoParseableValues,
  Usage,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::EmptySample: return "empty-sample";
    case ErrorKind::ParameterOutOfRange: return "parameter-out-of-range";
    case ErrorKind::WrongCase: return "wrong-case";
    case ErrorKind::UnsupportedSpec: return "unsupported-spec";
    case ErrorKind::MissingFile: return "missing-file";
    case ErrorKind::UnknownColumn: return "unknown-column";
    case ErrorKind::NoParseableValues: return "no-parseable-values";
    case ErrorKind::Usage: return "usage";
  }
  return "unknown";
}

// Process exit codes. 0 is success, 1 is a failed verification run.
inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage: return 2;
    case ErrorKind::MissingFile: return 3;
    case ErrorKind::UnknownColumn: return 4;
    case ErrorKind::NoParseableValues: return 5;
    case ErrorKind::EmptySample: return 6;
    case ErrorKind::ParameterOutOfRange: return 7;
    case ErrorKind::WrongCase: return 8;
    case ErrorKind::Domain: return 9;
    case ErrorKind::UnsupportedSpec: return 10;
  }
  return 70;
}

namespace detail {

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace detail
}  // namespace benford
