#include "homolocal/error.hpp"

namespace homolocal {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidPrime: return "InvalidPrime";
    case ErrorKind::NotAComplex: return "NotAComplex";
    case ErrorKind::NotAChainMap: return "NotAChainMap";
    case ErrorKind::TruncationExceeded: return "TruncationExceeded";
    case ErrorKind::NonHomogeneousRelation: return "NonHomogeneousRelation";
    case ErrorKind::RelationDegreeTooLow: return "RelationDegreeTooLow";
    case ErrorKind::NonHomogeneousElement: return "NonHomogeneousElement";
    case ErrorKind::IncompatibleDegreeScale: return "IncompatibleDegreeScale";
    case ErrorKind::RelationNotKilled: return "RelationNotKilled";
    case ErrorKind::WrongImageDegree: return "WrongImageDegree";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::NotCI: return "NotCI";
    case ErrorKind::NotRegularSet: return "NotRegularSet";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownReference: return "UnknownReference";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

}  // namespace homolocal
