#pragma once

#include <stdexcept>
#include <string>

namespace lipext {

/// Failure categories surfaced by the library. The CLI maps every one of
/// these to exit code 2 (input error) except where noted at the call site.
enum class ErrorKind {
  NonSquare,
  NegativeEntry,
  TriangleViolation,
  InvalidMetric,
  EmptySet,
  EmptySubspace,
  EmptyComplement,
  DomainError,
  UncoveredPoint,
  DomainMismatch,
  SizeLimit,
  DegeneratePair,
  BasePointNonzero,
  Disconnected,
  NotInCluster,
  ResidualActiveCluster,
  UnknownKind,
  InvalidInput,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lipext
