#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace knotfert {

enum class ErrorKind {
  MalformedCode,
  NotRealizable,
  LengthMismatch,
  NotAKnot,
  ResourceLimit,
  ZeroPolynomial,
  ParseError,
  DuplicateName,
  UnknownKnot,
  TableInsufficient,
  EmptySet,
  MissingAnnotation,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Domain error raised by every module. The kind is what the CLI reports.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace knotfert
