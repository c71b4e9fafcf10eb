#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace homolocal {

enum class ErrorKind {
  InvalidPrime,
  NotAComplex,
  NotAChainMap,
  TruncationExceeded,
  NonHomogeneousRelation,
  RelationDegreeTooLow,
  NonHomogeneousElement,
  IncompatibleDegreeScale,
  RelationNotKilled,
  WrongImageDegree,
  WindowTooSmall,
  NotCI,
  NotRegularSet,
  ParseError,
  UnknownReference,
  ValidationError,
  InvariantViolation,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<int> degree = std::nullopt)
      : std::runtime_error(message), kind_(kind), degree_(degree) {}

  ErrorKind kind() const { return kind_; }
  // For TruncationExceeded: the internal degree that could not be reached.
  std::optional<int> degree() const { return degree_; }

 private:
  ErrorKind kind_;
  std::optional<int> degree_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message,
                              std::optional<int> degree = std::nullopt) {
  throw Error(kind, message, degree);
}

}  // namespace homolocal
