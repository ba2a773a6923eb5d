#pragma once

#include <stdexcept>
#include <string>

namespace contact9 {

/// Malformed input document.  `field` is a path such as "graded[3].z_rank";
/// `line` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string field, int line, const std::string& message)
      : std::runtime_error(format(field, line, message)), field_(std::move(field)), line_(line) {}

  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  static std::string format(const std::string& field, int line, const std::string& message) {
    std::string s = "parse error";
    if (!field.empty()) s += " at field '" + field + "'";
    if (line > 0) s += " (line " + std::to_string(line) + ")";
    return s + ": " + message;
  }

  std::string field_;
  int line_;
};

/// A model failed a structural or characteristic-class check.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Two independent computations that must agree did not.  Indicates an
/// engine bug or an input contradicting a proven identity.
class InternalInconsistency : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace contact9
