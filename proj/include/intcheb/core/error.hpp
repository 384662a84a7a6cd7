#pragma once

#include <stdexcept>
#include <string>

namespace intcheb {

/// Base class of every error raised by the library. `code()` is a stable
/// machine-readable identifier (the CLI prints it verbatim).
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// Input violates an operation's precondition (bad interval, zero polynomial,
/// root outside the required region, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A decision procedure hit its cap and refuses to guess.
class UndecidedError : public Error {
 public:
  explicit UndecidedError(const std::string& what) : Error("undecided", what) {}
};

/// Working precision reached the configured cap without a certificate.
class PrecisionExhausted : public Error {
 public:
  explicit PrecisionExhausted(const std::string& what)
      : Error("precision_exhausted", what) {}
};

/// A search exceeded its candidate budget.
class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& what)
      : Error("budget_exceeded", what) {}
};

}  // namespace intcheb
