#pragma once

#include "bpart/real.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bpart {

/// Exact quadratic surd (p + q*sqrt(d)) / r with r > 0, q != 0 and d not a
/// perfect square.
struct Surd {
  mpz_class p, q, r, d;
};

/// Rational enclosure lo < alpha < hi.
struct Enclosure {
  mpq_class lo, hi;
};

/// Produces enclosures of a fixed irrational at a requested bit count.
class EnclosureSource {
 public:
  virtual ~EnclosureSource() = default;
  virtual Enclosure at_bits(unsigned bits) const = 0;
  /// False when the enclosure is fixed (e.g. a decimal literal).
  virtual bool refinable() const = 0;
};

inline constexpr unsigned kDefaultMaxBits = 4096;
inline constexpr unsigned kDefaultFracBits = 96;

/// An irrational alpha > 1, either an exact surd or a certified interval.
/// Immutable; refinement happens in local copies inside the evaluators.
class Alpha {
 public:
  enum class Kind { QuadraticSurd, CertifiedInterval };

  /// Validates and normalizes (gcd of p, q, r divided out, r > 0).
  static Alpha from_surd(mpz_class p, mpz_class q, mpz_class r, mpz_class d,
                         std::string spec = {});
  static Alpha from_source(std::shared_ptr<const EnclosureSource> source, std::string spec,
                           unsigned base_bits = 128, unsigned max_bits = kDefaultMaxBits);

  Kind kind() const { return kind_; }
  bool is_surd() const { return kind_ == Kind::QuadraticSurd; }
  const Surd& surd() const { return surd_; }
  const std::string& spec() const { return spec_; }

  /// Real approximation (enclosure midpoint for intervals).
  const Real& value() const { return value_; }
  std::int64_t floor_value() const { return floor_value_; }

  /// Enclosure at >= bits of precision. Surds return a tight dyadic enclosure.
  Enclosure enclosure(unsigned bits) const;
  const Enclosure& base_enclosure() const { return base_; }
  unsigned base_bits() const { return base_bits_; }
  unsigned max_bits() const { return max_bits_; }
  bool refinable() const;
  Alpha with_max_bits(unsigned bits) const;

  /// Bound A on every partial quotient, if known.
  std::optional<std::int64_t> quotient_bound() const { return quotient_bound_; }
  /// True when the bound was supplied by the user rather than derived.
  bool quotient_bound_is_conditional() const { return bound_conditional_; }
  Alpha with_quotient_bound(std::int64_t bound) const;

  /// Leading partial quotients known at construction (pre-period and one
  /// period for surds; a certified prefix for intervals).
  const std::vector<std::int64_t>& cf_prefix() const { return cf_prefix_; }

 private:
  Alpha() = default;

  Kind kind_ = Kind::QuadraticSurd;
  Surd surd_;
  std::shared_ptr<const EnclosureSource> source_;
  Enclosure base_;
  unsigned base_bits_ = 128;
  unsigned max_bits_ = kDefaultMaxBits;
  std::string spec_;
  Real value_{0};
  std::int64_t floor_value_ = 0;
  std::optional<std::int64_t> quotient_bound_;
  bool bound_conditional_ = false;
  std::vector<std::int64_t> cf_prefix_;
};

/// Parses `sqrt:<d>`, `surd:<p>,<q>,<r>,<d>`, `decimal:<digits>`, `e` or `pi`.
Alpha parse_alpha(std::string_view spec);

/// Exact floor(alpha * ell), ell >= 1.
std::int64_t floor_multiple(const Alpha& a, std::uint64_t ell);

/// {alpha * ell} with absolute error < 2^-precision_bits, precision_bits <= 112.
Real frac_multiple(const Alpha& a, std::uint64_t ell, unsigned precision_bits = kDefaultFracBits);

/// [a0; a1, ..., ak] (k + 1 entries).
std::vector<std::int64_t> continued_fraction(const Alpha& a, std::size_t k);

/// Periodic structure of a surd's expansion: a0..a_{pre-1} then a repeating block.
struct PeriodicExpansion {
  std::vector<std::int64_t> preperiod;
  std::vector<std::int64_t> period;
};
PeriodicExpansion surd_periodic_expansion(const Surd& s);

/// Per-thread evaluator of floor(alpha*ell) and {alpha*ell}; reuses GMP
/// scratch and a pre-refined enclosure covering ell <= ell_max.
class BeattyEvaluator {
 public:
  explicit BeattyEvaluator(const Alpha& a, std::uint64_t ell_max = 1u << 20,
                           unsigned frac_bits = kDefaultFracBits);

  std::int64_t floor(std::uint64_t ell);
  /// {alpha*ell}; also yields the floor.
  Real frac(std::uint64_t ell, std::int64_t* floor_out = nullptr);

  const Alpha& alpha() const { return alpha_; }
  unsigned frac_bits() const { return frac_bits_; }

 private:
  bool interval_floor(const Enclosure& e, std::uint64_t ell, mpz_class& out);
  Enclosure refine_for(std::uint64_t ell);

  Alpha alpha_;
  unsigned frac_bits_;
  unsigned work_bits_;
  Enclosure work_;
  bool small_surd_ = false;
  std::int64_t sp_ = 0, sq_ = 0, sr_ = 0;
  unsigned __int128 small_m_ = 0;  // q^2 d
  mpz_class t0_, t1_, t2_, t3_;
};

}  // namespace bpart
