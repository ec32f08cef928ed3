#include "bpart/estimate.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace bpart {

const char* to_string(EstimateVariant v) {
  switch (v) {
    case EstimateVariant::SaddlePoint: return "saddle-point";
    case EstimateVariant::ClosedForm: return "closed-form";
    case EstimateVariant::ConstantFree: return "constant-free";
  }
  return "?";
}

std::string exp_to_decimal(const Real& log_value, int digits) {
  const Real log10v = log_value / log(Real(10));
  Real e = floor(log10v);
  double mant = static_cast<double>(pow(Real(10), log10v - e));
  // Rounding the mantissa can carry into the next decade.
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits - 1, mant);
  if (std::atof(buf) >= 10.0) {
    mant /= 10;
    e += 1;
    std::snprintf(buf, sizeof buf, "%.*f", digits - 1, mant);
  }
  const long long ex = static_cast<long long>(e);
  char out[96];
  std::snprintf(out, sizeof out, "%se%s%02lld", buf, ex < 0 ? "-" : "+", ex < 0 ? -ex : ex);
  return out;
}

Real log_integer(const mpz_class& v) {
  const long bits = static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2));
  if (bits <= 120) return log(to_real(v));
  const long drop = bits - 120;
  mpz_class top = v >> static_cast<mp_bitcnt_t>(drop);
  return log(to_real(top)) + Real(drop) * log(Real(2));
}

}  // namespace bpart
