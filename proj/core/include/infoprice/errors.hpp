#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace infoprice {

/// Every failure the library raises carries one of these kinds so callers
/// (notably the CLI) can map it onto an exit code without string matching.
enum class ErrorKind {
  // filtration
  NonNestedPartition,
  BadProbabilities,
  OrphanScenario,
  // shapes and arguments
  DimensionMismatch,
  ShapeMismatch,
  NonpositiveScale,
  EmptyPieceList,
  EmptyAtom,
  // function properties
  ImproperFunction,
  ImproperInput,
  ImproperRecursion,
  NotInDomain,
  EmptySubdifferential,
  // solving
  LpNumericalFailure,
  SampleEvaluationFailure,
  Unattained,
  // input files
  ParseError,
  ValidationError,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// A load-time failure that wraps another error (typically a FilteredSpace
/// validation failure) and records where in the input it was found.
class ValidationError : public Error {
 public:
  ValidationError(ErrorKind cause, std::string location, const std::string& what)
      : Error(ErrorKind::ValidationError, what),
        cause_(cause),
        location_(std::move(location)) {}

  ErrorKind cause() const noexcept { return cause_; }
  const std::string& location() const noexcept { return location_; }

 private:
  ErrorKind cause_;
  std::string location_;
};

}  // namespace infoprice
