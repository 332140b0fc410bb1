#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace divlab {

enum class ErrorKind {
  not_a_group,
  bad_names,
  size_cap_exceeded,
  syntax_error,
  unbound_name,
  arity_exceeded,
  search_space_too_large,
  invalid_action,
  not_normal,
  precondition_violated,
  degree_mismatch,
  input_error,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::not_a_group: return "NotAGroup";
    case ErrorKind::bad_names: return "BadNames";
    case ErrorKind::size_cap_exceeded: return "SizeCapExceeded";
    case ErrorKind::syntax_error: return "SyntaxError";
    case ErrorKind::unbound_name: return "UnboundName";
    case ErrorKind::arity_exceeded: return "ArityExceeded";
    case ErrorKind::search_space_too_large: return "SearchSpaceTooLarge";
    case ErrorKind::invalid_action: return "InvalidAction";
    case ErrorKind::not_normal: return "NotNormal";
    case ErrorKind::precondition_violated: return "PreconditionViolated";
    case ErrorKind::degree_mismatch: return "DegreeMismatch";
    case ErrorKind::input_error: return "InputError";
  }
  return "Unknown";
}

/// Base of every recoverable error raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for the two "too big to enumerate" kinds.
  bool is_cap_error() const noexcept {
    return kind_ == ErrorKind::size_cap_exceeded || kind_ == ErrorKind::search_space_too_large;
  }

 private:
  ErrorKind kind_;
};

enum class GroupAxiom { closure, associativity, identity, inverse };

inline std::string_view to_string(GroupAxiom axiom) {
  switch (axiom) {
    case GroupAxiom::closure: return "closure";
    case GroupAxiom::associativity: return "associativity";
    case GroupAxiom::identity: return "identity";
    case GroupAxiom::inverse: return "inverse";
  }
  return "unknown";
}

class NotAGroup : public Error {
 public:
  NotAGroup(GroupAxiom reason, const std::string& detail)
      : Error(ErrorKind::not_a_group, std::string(to_string(reason)) + " (" + detail + ")"),
        reason_(reason) {}

  GroupAxiom reason() const noexcept { return reason_; }

 private:
  GroupAxiom reason_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& detail)
      : Error(ErrorKind::syntax_error, "at offset " + std::to_string(position) + ": " + detail),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace divlab
