#pragma once

#include "bpart/counting.hpp"
#include "bpart/real.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace bpart {

enum class EstimateVariant {
  SaddlePoint,   ///< saddle-point formula with numerically solved root
  ClosedForm,    ///< leading-order formula including its constant
  ConstantFree,  ///< leading-order formula with the constant dropped (table columns)
};

const char* to_string(EstimateVariant v);

/// An asymptotic estimate of p or q, held in log space.
struct EstimateReport {
  std::uint64_t n = 0;
  PartitionKind kind = PartitionKind::Unrestricted;
  EstimateVariant variant = EstimateVariant::SaddlePoint;
  Real log_value{0};
  /// exp(log_value) to 12 significant digits, e.g. "1.23780494715e+24".
  std::optional<std::string> value;
  /// Bounds on log_value inherited from an interval constant (Lambda).
  std::optional<Real> log_lo, log_hi;
};

/// Scientific decimal rendering of exp(log_value) with `digits` significant
/// digits; works far beyond the range of the floating type.
std::string exp_to_decimal(const Real& log_value, int digits = 12);

/// log of a positive integer, accurate to the working precision.
Real log_integer(const mpz_class& v);

}  // namespace bpart
