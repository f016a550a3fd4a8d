#pragma once

#include <cmath>
#include <limits>

namespace infoprice::detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Sum on the extended line where +inf wins over -inf.
inline double extendedSum(double acc, double term) {
  if (std::isinf(acc) && acc > 0) return acc;
  if (std::isinf(term) && term > 0) return term;
  return acc + term;
}

}  // namespace infoprice::detail
