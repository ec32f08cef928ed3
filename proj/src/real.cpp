#include "bpart/real.hpp"
#include "bpart/errors.hpp"

#include <quadmath.h>

#include <sstream>
#include <iomanip>

namespace bpart {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::Rationality: return "RationalityError";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Certification: return "CertificationError";
    case ErrorKind::Resource: return "ResourceError";
    case ErrorKind::Tolerance: return "ToleranceError";
    case ErrorKind::Bracket: return "BracketError";
    case ErrorKind::MissingBound: return "MissingBoundError";
  }
  return "Error";
}

Real to_real(const mpz_class& num, long exp2) {
  const int sign = sgn(num);
  if (sign == 0) return Real(0);
  mpz_class mag = abs(num);
  const long bits = static_cast<long>(mpz_sizeinbase(mag.get_mpz_t(), 2));
  // Keep 120 leading bits; the final rounding to 113 bits dominates.
  if (bits > 120) {
    const long drop = bits - 120;
    mpz_tdiv_q_2exp(mag.get_mpz_t(), mag.get_mpz_t(), static_cast<mp_bitcnt_t>(drop));
    exp2 += drop;
  }
  unsigned __int128 v = 0;
  const std::size_t limbs = mpz_size(mag.get_mpz_t());
  for (std::size_t i = limbs; i-- > 0;) {
    v = (v << 64) | static_cast<unsigned __int128>(mpz_getlimbn(mag.get_mpz_t(), i));
  }
  __float128 f = static_cast<__float128>(v);
  f = ldexpq(f, static_cast<int>(exp2));
  return Real(sign < 0 ? -f : f);
}

Real to_real(const mpq_class& q) {
  if (q == 0) return Real(0);
  const long nb = static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2));
  const long db = static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
  const long shift = 124 - nb + db;
  mpz_class n = q.get_num();
  if (shift >= 0) {
    n <<= static_cast<mp_bitcnt_t>(shift);
  } else {
    n >>= static_cast<mp_bitcnt_t>(-shift);
  }
  mpz_class quot;
  mpz_tdiv_q(quot.get_mpz_t(), n.get_mpz_t(), q.get_den_mpz_t());
  return to_real(quot, -shift);
}

std::string format_real(const Real& x, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

}  // namespace bpart
