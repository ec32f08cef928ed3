#include "bpart/alpha.hpp"
#include "bpart/errors.hpp"

#include <mpfr.h>

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

namespace bpart {
namespace {

const char* const kModule = "alpha";

mpz_class fdiv(const mpz_class& n, const mpz_class& d) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}

mpz_class isqrt(const mpz_class& n) {
  mpz_class s;
  mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
  return s;
}

std::int64_t to_i64(const mpz_class& v, const char* what) {
  if (!v.fits_slong_p()) {
    throw ResourceError(kModule, std::string(what) + " does not fit in 64 bits");
  }
  return v.get_si();
}

// floor((p*ell + q*sqrt(d)*ell) / r) for r > 0, exact.
mpz_class surd_floor(const Surd& s, const mpz_class& ell) {
  const mpz_class root = isqrt(s.q * s.q * s.d * ell * ell);
  if (s.q > 0) return fdiv(s.p * ell + root, s.r);
  return fdiv(s.p * ell - root - 1, s.r);
}

// alpha = (p + q sqrt(d)) / r > 1, decided exactly.
bool surd_exceeds_one(const Surd& s) {
  const mpz_class c = s.r - s.p;  // need q sqrt(d) > c
  const mpz_class lhs = s.q * s.q * s.d;
  if (s.q > 0) return c < 0 || lhs > c * c;
  return c < 0 && lhs < c * c;
}

mpq_class dyadic(const mpz_class& mant, long exp2) {
  mpq_class q(mant);
  if (exp2 >= 0) {
    mpz_class scale = 1;
    scale <<= static_cast<mp_bitcnt_t>(exp2);
    q *= scale;
  } else {
    mpz_class scale = 1;
    scale <<= static_cast<mp_bitcnt_t>(-exp2);
    q /= scale;
  }
  q.canonicalize();
  return q;
}

mpq_class mpfr_to_q(const mpfr_t x) {
  mpz_class z;
  const mpfr_exp_t e = mpfr_get_z_2exp(z.get_mpz_t(), x);
  return dyadic(z, static_cast<long>(e));
}

// Canonical (last quotient >= 2) continued fraction of a rational, at most
// `limit` terms.
std::vector<mpz_class> rational_cf(const mpq_class& x, std::size_t limit) {
  std::vector<mpz_class> out;
  mpz_class n = x.get_num(), d = x.get_den();
  while (d != 0 && out.size() < limit) {
    mpz_class a = fdiv(n, d);
    mpz_class rem = n - a * d;
    out.push_back(a);
    n = d;
    d = rem;
  }
  return out;
}

class MpfrConstantSource final : public EnclosureSource {
 public:
  enum class Which { Pi, E };
  explicit MpfrConstantSource(Which w) : which_(w) {}

  Enclosure at_bits(unsigned bits) const override {
    mpfr_t lo, hi, one;
    const mpfr_prec_t prec = static_cast<mpfr_prec_t>(bits) + 8;
    mpfr_inits2(prec, lo, hi, one, static_cast<mpfr_ptr>(nullptr));
    if (which_ == Which::Pi) {
      mpfr_const_pi(lo, MPFR_RNDD);
      mpfr_const_pi(hi, MPFR_RNDU);
    } else {
      mpfr_set_ui(one, 1, MPFR_RNDN);
      mpfr_exp(lo, one, MPFR_RNDD);
      mpfr_exp(hi, one, MPFR_RNDU);
    }
    Enclosure e{mpfr_to_q(lo), mpfr_to_q(hi)};
    mpfr_clears(lo, hi, one, static_cast<mpfr_ptr>(nullptr));
    return e;
  }
  bool refinable() const override { return true; }

 private:
  Which which_;
};

class DecimalSource final : public EnclosureSource {
 public:
  DecimalSource(mpz_class digits, unsigned scale_exp) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, scale_exp);
    enc_.lo = mpq_class(digits - 1, scale);
    enc_.hi = mpq_class(digits + 1, scale);
    enc_.lo.canonicalize();
    enc_.hi.canonicalize();
  }
  Enclosure at_bits(unsigned) const override { return enc_; }
  bool refinable() const override { return false; }

 private:
  Enclosure enc_;
};

// Leading quotients shared by both endpoints, usable as certified quotients
// of anything strictly between them.
std::vector<std::int64_t> certified_cf(const Enclosure& e, std::size_t want) {
  const auto lo = rational_cf(e.lo, want + 2);
  const auto hi = rational_cf(e.hi, want + 2);
  std::vector<std::int64_t> out;
  const std::size_t n = std::min(lo.size(), hi.size());
  for (std::size_t i = 0; i < n && out.size() < want; ++i) {
    if (lo[i] != hi[i]) break;
    // An endpoint whose expansion ends right here could be a cylinder boundary.
    if (i + 1 >= lo.size() || i + 1 >= hi.size()) break;
    out.push_back(to_i64(lo[i], "partial quotient"));
  }
  return out;
}

mpz_class parse_int(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError(kModule, "empty integer");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw ParseError(kModule, "malformed integer '" + s + "'");
  for (std::size_t i = start; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
      throw ParseError(kModule, "malformed integer '" + s + "'");
    }
  }
  if (s[0] == '+') s.erase(0, 1);
  return mpz_class(s, 10);
}

}  // namespace

// ---------------------------------------------------------------------------

PeriodicExpansion surd_periodic_expansion(const Surd& s) {
  // Rewrite alpha as (P + sqrt(D)) / Q with Q | (D - P^2).
  mpz_class P = s.q > 0 ? mpz_class(s.p) : mpz_class(-s.p);
  mpz_class Q = s.q > 0 ? mpz_class(s.r) : mpz_class(-s.r);
  mpz_class D = s.q * s.q * s.d;
  {
    mpz_class rem = (D - P * P) % Q;
    if (rem != 0) {
      const mpz_class aq = abs(Q);
      P *= aq;
      D *= Q * Q;
      Q *= aq;
    }
  }
  const mpz_class root = isqrt(D);

  std::map<std::pair<mpz_class, mpz_class>, std::size_t> seen;
  std::vector<std::int64_t> terms;
  constexpr std::size_t kMaxSteps = 1'000'000;
  while (true) {
    auto key = std::make_pair(P, Q);
    if (auto it = seen.find(key); it != seen.end()) {
      PeriodicExpansion out;
      out.preperiod.assign(terms.begin(), terms.begin() + static_cast<long>(it->second));
      out.period.assign(terms.begin() + static_cast<long>(it->second), terms.end());
      return out;
    }
    if (terms.size() >= kMaxSteps) {
      throw ResourceError(kModule, "continued fraction period exceeds 10^6 terms");
    }
    seen.emplace(std::move(key), terms.size());
    mpz_class a = Q > 0 ? fdiv(P + root, Q) : mpz_class(-fdiv(P + root, -Q) - 1);
    terms.push_back(to_i64(a, "partial quotient"));
    P = a * Q - P;
    Q = (D - P * P) / Q;
  }
}

Alpha Alpha::from_surd(mpz_class p, mpz_class q, mpz_class r, mpz_class d, std::string spec) {
  if (r == 0) throw DomainError(kModule, "surd denominator r must be nonzero");
  if (d <= 0) throw DomainError(kModule, "surd radicand d must be positive");
  if (q == 0) throw RationalityError(kModule, "q = 0 gives a rational number");
  if (mpz_perfect_square_p(d.get_mpz_t())) {
    throw RationalityError(kModule, "radicand " + d.get_str() + " is a perfect square");
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r.get_mpz_t());
  if (r < 0) g = -g;
  p /= g;
  q /= g;
  r /= g;

  Alpha a;
  a.kind_ = Kind::QuadraticSurd;
  a.surd_ = Surd{p, q, r, d};
  if (!surd_exceeds_one(a.surd_)) throw DomainError(kModule, "alpha must exceed 1");
  a.spec_ = spec.empty() ? "surd:" + p.get_str() + "," + q.get_str() + "," + r.get_str() + "," +
                               d.get_str()
                         : std::move(spec);
  a.base_ = a.enclosure(a.base_bits_);
  a.value_ = to_real(mpq_class((a.base_.lo + a.base_.hi) / 2));
  a.floor_value_ = to_i64(surd_floor(a.surd_, 1), "floor(alpha)");

  const auto ex = surd_periodic_expansion(a.surd_);
  std::int64_t bound = 0;
  for (auto v : ex.preperiod) bound = std::max(bound, v);
  for (auto v : ex.period) bound = std::max(bound, v);
  a.quotient_bound_ = bound;
  a.cf_prefix_ = ex.preperiod;
  a.cf_prefix_.insert(a.cf_prefix_.end(), ex.period.begin(), ex.period.end());
  return a;
}

Alpha Alpha::from_source(std::shared_ptr<const EnclosureSource> source, std::string spec,
                         unsigned base_bits, unsigned max_bits) {
  Alpha a;
  a.kind_ = Kind::CertifiedInterval;
  a.source_ = std::move(source);
  a.spec_ = std::move(spec);
  a.base_bits_ = base_bits;
  a.max_bits_ = std::max(max_bits, base_bits);
  a.base_ = a.source_->at_bits(base_bits);
  if (!(a.base_.lo < a.base_.hi)) throw DomainError(kModule, "empty enclosure");
  if (a.base_.hi <= 1) throw DomainError(kModule, "alpha must exceed 1");
  if (a.base_.lo <= 1) throw DomainError(kModule, "cannot certify alpha > 1 at this precision");
  const mpz_class flo = fdiv(a.base_.lo.get_num(), a.base_.lo.get_den());
  const mpz_class fhi = fdiv(a.base_.hi.get_num(), a.base_.hi.get_den());
  if (flo != fhi) throw CertificationError(kModule, "floor(alpha) is not certified");
  a.floor_value_ = to_i64(flo, "floor(alpha)");
  a.value_ = to_real(mpq_class((a.base_.lo + a.base_.hi) / 2));
  a.cf_prefix_ = certified_cf(a.base_, 24);
  return a;
}

bool Alpha::refinable() const { return is_surd() || source_->refinable(); }

Enclosure Alpha::enclosure(unsigned bits) const {
  if (is_surd()) {
    mpz_class scale = 1;
    scale <<= bits;
    const mpz_class f = surd_floor(surd_, scale);
    Enclosure e{mpq_class(f, scale), mpq_class(f + 1, scale)};
    e.lo.canonicalize();
    e.hi.canonicalize();
    return e;
  }
  if (bits <= base_bits_ || !source_->refinable()) return base_;
  if (bits > max_bits_) {
    throw CertificationError(kModule, "refinement beyond " + std::to_string(max_bits_) +
                                          " bits requested for " + spec_);
  }
  return source_->at_bits(bits);
}

Alpha Alpha::with_max_bits(unsigned bits) const {
  Alpha copy = *this;
  copy.max_bits_ = std::max(bits, base_bits_);
  return copy;
}

Alpha Alpha::with_quotient_bound(std::int64_t bound) const {
  if (bound < 1) throw DomainError(kModule, "quotient bound must be >= 1");
  Alpha copy = *this;
  copy.quotient_bound_ = bound;
  copy.bound_conditional_ = true;
  return copy;
}

// ---------------------------------------------------------------------------

Alpha parse_alpha(std::string_view spec) {
  const std::string text(spec);
  if (text == "pi") {
    return Alpha::from_source(
        std::make_shared<MpfrConstantSource>(MpfrConstantSource::Which::Pi), text);
  }
  if (text == "e") {
    return Alpha::from_source(
        std::make_shared<MpfrConstantSource>(MpfrConstantSource::Which::E), text);
  }
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError(kModule, "unrecognized alpha '" + text + "'");
  const std::string head = text.substr(0, colon);
  const std::string body = text.substr(colon + 1);

  if (head == "sqrt") {
    return Alpha::from_surd(0, 1, 1, parse_int(body), text);
  }
  if (head == "surd") {
    std::vector<std::string_view> fields;
    std::string_view rest(body);
    while (true) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields.size() != 4) throw ParseError(kModule, "surd needs p,q,r,d: '" + text + "'");
    return Alpha::from_surd(parse_int(fields[0]), parse_int(fields[1]), parse_int(fields[2]),
                            parse_int(fields[3]), text);
  }
  if (head == "decimal") {
    const auto dot = body.find('.');
    std::string digits = body.substr(0, dot);
    std::string frac = dot == std::string::npos ? std::string() : body.substr(dot + 1);
    auto all_digits = [](const std::string& s) {
      return std::all_of(s.begin(), s.end(),
                         [](unsigned char c) { return std::isdigit(c) != 0; });
    };
    if (digits.empty() || !all_digits(digits) || !all_digits(frac) ||
        (dot != std::string::npos && frac.empty())) {
      throw ParseError(kModule, "malformed decimal '" + body + "'");
    }
    mpz_class value(digits + frac, 10);
    return Alpha::from_source(
        std::make_shared<DecimalSource>(value, static_cast<unsigned>(frac.size())), text);
  }
  throw ParseError(kModule, "unrecognized alpha form '" + head + "'");
}

// ---------------------------------------------------------------------------

BeattyEvaluator::BeattyEvaluator(const Alpha& a, std::uint64_t ell_max, unsigned frac_bits)
    : alpha_(a), frac_bits_(frac_bits) {
  if (frac_bits == 0 || frac_bits > kMaxFracBits) {
    throw DomainError(kModule, "fractional precision must be in [1, " +
                                   std::to_string(kMaxFracBits) + "] bits");
  }
  const unsigned ell_bits = static_cast<unsigned>(std::bit_width(std::max<std::uint64_t>(ell_max, 1)));
  if (a.is_surd()) {
    const Surd& s = a.surd();
    if (s.p.fits_slong_p() && s.q.fits_slong_p() && s.r.fits_slong_p() && s.d.fits_slong_p()) {
      const mpz_class m = s.q * s.q * s.d;
      // floor path needs q^2 d ell^2 < 2^125 and p*ell within 2^62
      const unsigned mbits = static_cast<unsigned>(mpz_sizeinbase(m.get_mpz_t(), 2));
      const unsigned pbits = static_cast<unsigned>(mpz_sizeinbase(s.p.get_mpz_t(), 2));
      if (mbits + 2 * ell_bits <= 124 && pbits + ell_bits <= 62) {
        small_surd_ = true;
        sp_ = s.p.get_si();
        sq_ = s.q.get_si();
        sr_ = s.r.get_si();
        const std::uint64_t qa = static_cast<std::uint64_t>(sq_ < 0 ? -sq_ : sq_);
        small_m_ = static_cast<unsigned __int128>(qa) * qa *
                   static_cast<unsigned __int128>(s.d.get_si());
      }
    }
    t3_ = s.q * s.q * s.d;
    work_bits_ = 0;
  } else {
    work_bits_ = std::max(a.base_bits(), frac_bits + ell_bits + 32);
    if (a.refinable()) work_bits_ = std::min(work_bits_, a.max_bits());
    work_ = a.enclosure(work_bits_);
  }
}

namespace {
unsigned __int128 isqrt128(unsigned __int128 m) {
  auto s = static_cast<unsigned __int128>(std::sqrt(static_cast<long double>(m)));
  while (s * s > m) --s;
  while ((s + 1) * (s + 1) <= m) ++s;
  return s;
}

__int128 floordiv128(__int128 n, __int128 d) {
  __int128 q = n / d;
  if ((n % d != 0) && ((n < 0) != (d < 0))) --q;
  return q;
}
}  // namespace

bool BeattyEvaluator::interval_floor(const Enclosure& e, std::uint64_t ell, mpz_class& out) {
  mpz_class ez(static_cast<unsigned long>(ell));
  t0_ = e.lo.get_num() * ez;
  mpz_fdiv_q(t1_.get_mpz_t(), t0_.get_mpz_t(), e.lo.get_den_mpz_t());
  t0_ = e.hi.get_num() * ez;
  mpz_fdiv_q(t2_.get_mpz_t(), t0_.get_mpz_t(), e.hi.get_den_mpz_t());
  if (t1_ != t2_) return false;
  out = t1_;
  return true;
}

Enclosure BeattyEvaluator::refine_for(std::uint64_t ell) {
  if (!alpha_.refinable() || work_bits_ >= alpha_.max_bits()) {
    throw CertificationError(kModule, "cannot separate alpha*" + std::to_string(ell) +
                                          " from an integer within " +
                                          std::to_string(work_bits_) + " bits (" +
                                          alpha_.spec() + ")");
  }
  work_bits_ = std::min(work_bits_ * 2, alpha_.max_bits());
  work_ = alpha_.enclosure(work_bits_);
  return work_;
}

std::int64_t BeattyEvaluator::floor(std::uint64_t ell) {
  if (small_surd_) {
    const unsigned __int128 e = ell;
    const unsigned __int128 m = small_m_ * e * e;
    const auto root = static_cast<__int128>(isqrt128(m));
    const __int128 pl = static_cast<__int128>(sp_) * static_cast<__int128>(ell);
    const __int128 num = sq_ > 0 ? pl + root : pl - root - 1;
    const __int128 f = floordiv128(num, sr_);
    if (f > std::numeric_limits<std::int64_t>::max() || f < 0) {
      throw ResourceError(kModule, "floor(alpha*ell) exceeds 64 bits");
    }
    return static_cast<std::int64_t>(f);
  }
  if (alpha_.is_surd()) {
    const Surd& s = alpha_.surd();
    mpz_class ez(static_cast<unsigned long>(ell));
    t0_ = t3_ * ez * ez;
    mpz_sqrt(t1_.get_mpz_t(), t0_.get_mpz_t());
    t2_ = s.q > 0 ? mpz_class(s.p * ez + t1_) : mpz_class(s.p * ez - t1_ - 1);
    return to_i64(fdiv(t2_, s.r), "floor(alpha*ell)");
  }
  mpz_class out;
  while (!interval_floor(work_, ell, out)) refine_for(ell);
  return to_i64(out, "floor(alpha*ell)");
}

Real BeattyEvaluator::frac(std::uint64_t ell, std::int64_t* floor_out) {
  if (alpha_.is_surd()) {
    const Surd& s = alpha_.surd();
    const unsigned k = frac_bits_ + 4;
    mpz_class ez(static_cast<unsigned long>(ell));
    t0_ = t3_ * ez * ez;
    t0_ <<= 2 * k;
    mpz_sqrt(t1_.get_mpz_t(), t0_.get_mpz_t());  // floor(sqrt(m) 2^k)
    t2_ = t1_ >> k;                              // floor(sqrt(m))
    const mpz_class pl = s.p * ez;
    const mpz_class fl = s.q > 0 ? fdiv(pl + t2_, s.r) : fdiv(pl - t2_ - 1, s.r);
    if (floor_out) *floor_out = to_i64(fl, "floor(alpha*ell)");
    mpz_class base = pl - s.r * fl;
    base <<= k;
    // Midpoint of the unit-width enclosure of r 2^k {alpha ell}.
    mpz_class num2 = s.q > 0 ? mpz_class(2 * (base + t1_) + 1) : mpz_class(2 * (base - t1_) - 1);
    Real f = to_real(num2, -static_cast<long>(k) - 1);
    if (s.r != 1) f /= to_real(s.r);
    return f;
  }
  mpz_class fl;
  mpq_class width_limit(1);
  {
    mpz_class den = 1;
    den <<= frac_bits_ + 1;
    width_limit = mpq_class(1, den);
  }
  while (true) {
    if (interval_floor(work_, ell, fl)) {
      const mpq_class width = (work_.hi - work_.lo) * mpq_class(static_cast<unsigned long>(ell));
      if (width < width_limit) break;
    }
    refine_for(ell);
  }
  if (floor_out) *floor_out = to_i64(fl, "floor(alpha*ell)");
  const mpq_class mid = (work_.lo + work_.hi) / 2 * mpq_class(static_cast<unsigned long>(ell)) - fl;
  return to_real(mid);
}

// ---------------------------------------------------------------------------

std::int64_t floor_multiple(const Alpha& a, std::uint64_t ell) {
  if (ell == 0) throw DomainError(kModule, "ell must be >= 1");
  BeattyEvaluator ev(a, ell);
  return ev.floor(ell);
}

Real frac_multiple(const Alpha& a, std::uint64_t ell, unsigned precision_bits) {
  if (ell == 0) throw DomainError(kModule, "ell must be >= 1");
  BeattyEvaluator ev(a, ell, precision_bits);
  return ev.frac(ell);
}

std::vector<std::int64_t> continued_fraction(const Alpha& a, std::size_t k) {
  if (k == 0) throw DomainError(kModule, "k must be >= 1");
  const std::size_t want = k + 1;
  if (a.is_surd()) {
    const auto ex = surd_periodic_expansion(a.surd());
    std::vector<std::int64_t> out;
    for (std::size_t i = 0; i < want; ++i) {
      if (i < ex.preperiod.size()) {
        out.push_back(ex.preperiod[i]);
      } else {
        out.push_back(ex.period[(i - ex.preperiod.size()) % ex.period.size()]);
      }
    }
    return out;
  }
  unsigned bits = a.base_bits();
  while (true) {
    const auto cf = certified_cf(a.enclosure(bits), want);
    if (cf.size() >= want) return cf;
    if (!a.refinable() || bits >= a.max_bits()) {
      throw CertificationError(kModule, "only " + std::to_string(cf.size()) +
                                            " partial quotients certified for " + a.spec());
    }
    bits = std::min(bits * 2, a.max_bits());
  }
}

}  // namespace bpart
