#include "knotfert/error.hpp"

namespace knotfert {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::MalformedCode: return "MalformedCode";
    case ErrorKind::NotRealizable: return "NotRealizable";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::NotAKnot: return "NotAKnot";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::UnknownKnot: return "UnknownKnot";
    case ErrorKind::TableInsufficient: return "TableInsufficient";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::MissingAnnotation: return "MissingAnnotation";
  }
  return "Unknown";
}

}  // namespace knotfert
