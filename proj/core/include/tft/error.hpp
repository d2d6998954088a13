/// @file error.hpp
/// Exception hierarchy shared by every tft module.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tft {

/// Base of all errors thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of an operation
/// (unordered fuzzy triple, non-positive rate, probability outside [0, 1]).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Two poles of a Heaviside expansion coincide.
class DegeneratePoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A probability at or above 1 - 1e-12 had to be turned into a rate
/// while saturation was disabled.
class SaturationError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A closed form produced an unordered fuzzy triple.
class InternalError : public Error {
 public:
  using Error::Error;
};

/// Syntax error in a tree document, annotated with its position.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : Error(Format(msg, line, column)), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string Format(const std::string& msg, int line, int column) {
    if (line <= 0) return msg;
    return "line " + std::to_string(line) + ", column " +
           std::to_string(column) + ": " + msg;
  }

  int line_;
  int column_;
};

/// Severity of a structural finding.
enum class Severity { kWarning, kError };

/// Machine-readable structural finding produced by validation.
struct Diagnostic {
  Severity severity = Severity::kError;
  std::string code;     ///< Stable identifier, e.g. "duplicate-id".
  std::string node_id;  ///< Offending node, empty when not node-specific.
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

/// A document parsed but failed structural validation.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Diagnostic> diagnostics)
      : Error(Summarize(diagnostics)), diagnostics_(std::move(diagnostics)) {}

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  static std::string Summarize(const std::vector<Diagnostic>& diagnostics) {
    std::string out = "invalid fault tree";
    for (const auto& d : diagnostics) {
      if (d.severity != Severity::kError) continue;
      out += "\n  [" + d.code + "]";
      if (!d.node_id.empty()) out += " " + d.node_id + ":";
      out += " " + d.message;
    }
    return out;
  }

  std::vector<Diagnostic> diagnostics_;
};

}  // namespace tft
