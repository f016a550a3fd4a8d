#include "infoprice/errors.hpp"

namespace infoprice {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonNestedPartition: return "NonNestedPartition";
    case ErrorKind::BadProbabilities: return "BadProbabilities";
    case ErrorKind::OrphanScenario: return "OrphanScenario";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NonpositiveScale: return "NonpositiveScale";
    case ErrorKind::EmptyPieceList: return "EmptyPieceList";
    case ErrorKind::EmptyAtom: return "EmptyAtom";
    case ErrorKind::ImproperFunction: return "ImproperFunction";
    case ErrorKind::ImproperInput: return "ImproperInput";
    case ErrorKind::ImproperRecursion: return "ImproperRecursion";
    case ErrorKind::NotInDomain: return "NotInDomain";
    case ErrorKind::EmptySubdifferential: return "EmptySubdifferential";
    case ErrorKind::LpNumericalFailure: return "LpNumericalFailure";
    case ErrorKind::SampleEvaluationFailure: return "SampleEvaluationFailure";
    case ErrorKind::Unattained: return "Unattained";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

}  // namespace infoprice
