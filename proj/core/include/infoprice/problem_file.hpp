#pragma once

#include "infoprice/program.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace infoprice {

/// h(., omega) = max-affine pieces + indicator{G x <= g, A x = a}. An empty
/// piece list stands for the zero function.
struct IntegrandSpec {
  std::vector<AffinePiece> pieces;
  MatrixXd G;
  VectorXd g;
  MatrixXd A;
  VectorXd a;
};

/// Raw contents of a problem file, before validation.
struct ProblemFile {
  std::vector<int> dims;
  std::vector<Scenario> scenarios;
  std::vector<std::vector<std::vector<std::string>>> partitions;  // [t][atom][id]
  std::vector<IntegrandSpec> integrands;                          // scenario order
};

PolyFun buildIntegrand(const IntegrandSpec& spec, int dim);

/// Validates and assembles. Filtration and shape failures are rethrown as
/// ValidationError carrying the original kind and the offending field.
StochasticProgram toProgram(const ProblemFile& file);

/// JSON text -> ProblemFile. Throws Error(ParseError) with the byte offset
/// or the field path of the problem.
ProblemFile parseProblem(std::string_view json_text);
ProblemFile loadProblem(const std::filesystem::path& path);

/// Canonical JSON; every number is written as a round-trip exact decimal
/// string.
std::string emitProblem(const ProblemFile& file);

/// parse + toProgram.
StochasticProgram parse(const std::filesystem::path& path);

/// Round-trip exact decimal text for a double ("inf"/"-inf" for infinities).
std::string exactDecimal(double value);

}  // namespace infoprice
