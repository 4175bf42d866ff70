// Error taxonomy shared by the whole library.  Every throwing condition has a
// stable code string (used by tests and the CLI) and a coarse kind that maps
// onto the CLI exit-code table: Parse/Validation -> 2, Feasibility/Budget -> 3.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace keycast {

enum class ErrorKind {
  Parse,        // malformed input text or unusable arguments
  Validation,   // structurally invalid instance or parameter combination
  Feasibility,  // instance and scheme are incompatible (connectivity, field size, ...)
  Budget,       // exact enumeration would exceed the configured budget
  Internal,     // a library invariant broke; always a bug
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const { return kind_; }
  const std::string& code() const { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message)
      : Error(ErrorKind::Parse, "ParseError",
              "line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::uint64_t required, std::uint64_t allowed)
      : Error(ErrorKind::Budget, "BudgetExceeded",
              "requires " + std::to_string(required) + " states, budget is " +
                  std::to_string(allowed)),
        required_(required), allowed_(allowed) {}
  std::uint64_t required() const { return required_; }
  std::uint64_t allowed() const { return allowed_; }

 private:
  std::uint64_t required_, allowed_;
};

[[noreturn]] inline void throw_error(ErrorKind kind, const char* code,
                                     const std::string& what) {
  throw Error(kind, code, what);
}

}  // namespace keycast
