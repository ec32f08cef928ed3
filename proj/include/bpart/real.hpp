#pragma once

#include <boost/multiprecision/float128.hpp>
#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace bpart {

/// Working high-precision scalar: IEEE binary128, 113-bit significand.
using Real = boost::multiprecision::float128;

inline constexpr int kRealSignificandBits = 113;

/// Largest fractional-part precision (in bits) a Real can honour.
inline constexpr unsigned kMaxFracBits = 112;

namespace constants {
// 64+ digit literals.
inline const Real& pi() {
  static const Real v(
      "3.141592653589793238462643383279502884197169399375105820974944592307816406286");
  return v;
}
inline const Real& euler_gamma() {
  static const Real v(
      "0.577215664901532860606512090082402431042159335939923598805767234884867726777");
  return v;
}
}  // namespace constants

/// num * 2^exp2, rounded to nearest Real.
Real to_real(const mpz_class& num, long exp2 = 0);

/// Exact rational rounded to a Real (relative error ~ 2^-112).
Real to_real(const mpq_class& q);

/// Decimal rendering with `digits` significant digits (defaultfloat style).
std::string format_real(const Real& x, int digits);

}  // namespace bpart
