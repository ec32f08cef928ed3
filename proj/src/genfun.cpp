#include "bpart/genfun.hpp"
#include "bpart/errors.hpp"
#include "bpart/quadrature.hpp"
#include "bpart/summation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace bpart {
namespace {

const char* const kModule = "genfun";

// Truncation bounds. Every series here runs over strictly increasing
// positive integers b (floor(alpha l), l, or n), and each term is dominated
// by a function of b alone. Summing the majorant over *all* integers b >= B
// (B = last used b + 1) gives a bound that needs no knowledge of the
// remaining Beatty parts. With r = e^{-t}:
//
//   -log(1 - r^b) <= r^b / (1 - r^B)            -> r^B / ((1 - r)(1 - r^B))
//   b r^b / (1 - r^b) <= b r^b / (1 - r^B)      -> r^B (B/(1-r) + r/(1-r)^2) / (1 - r^B)
//   b^2 r^b / (1 - r^b)^2                        -> r^B (B^2/(1-r) + 2Br/(1-r)^2
//                                                      + r(1+r)/(1-r)^3) / (1 - r^B)^2
//   1 / (e^{bt} - 1) = r^b / (1 - r^b)          -> same as the first line
//
// The sawtooth series has |term| <= (t/2) / (e^{tb} - 1) since alpha l > b,
// and each fractional-correction term is at most (t^2/8) / sinh^2(bt/2)
// = (t^2/2) r^b / (1 - r^b)^2 because K(u)/u^2 decreases in u.

struct Geometric {
  Real r, one_minus_r;
  explicit Geometric(const Real& t) : r(exp(-t)), one_minus_r(-expm1(-t)) {}

  Real rB(std::int64_t B, const Real& t) const { return exp(-t * Real(B)); }

  Real order0(std::int64_t B, const Real& t) const {
    const Real p = rB(B, t);
    return p / (one_minus_r * (1 - p));
  }
  Real order1(std::int64_t B, const Real& t) const {
    const Real p = rB(B, t);
    const Real b(B);
    return p * (b / one_minus_r + r / (one_minus_r * one_minus_r)) / (1 - p);
  }
  Real order2(std::int64_t B, const Real& t) const {
    const Real p = rB(B, t);
    const Real b(B);
    const Real q = one_minus_r;
    const Real s = b * b / q + 2 * b * r / (q * q) + r * (1 + r) / (q * q * q);
    return p * s / ((1 - p) * (1 - p));
  }
  Real squared_order0(std::int64_t B, const Real& t) const {
    const Real p = rB(B, t);
    return p / (one_minus_r * (1 - p) * (1 - p));
  }
};

// -log(1 - e^{-x}) for x > 0.
Real neg_log1m_exp(const Real& x) {
  if (x > Real(0.693)) return -log1p(-exp(-x));
  return -log(-expm1(-x));
}

void require_positive(const Real& t, const char* what) {
  if (!(t > 0)) throw DomainError(kModule, std::string(what) + " must be > 0");
}

// Sums term(b) over the integer sequence produced by next_b(), stopping once
// tail(B) < tol. The tail is checked every few terms; extra terms only
// improve accuracy.
template <class NextB, class Term, class Tail>
SeriesValue sum_until(NextB next_b, Term term, Tail tail, const Real& tol,
                      const SeriesOptions& opt) {
  CompensatedSum<Real> acc;
  std::uint64_t count = 0;
  while (true) {
    const std::int64_t b = next_b();
    acc.add(term(b));
    ++count;
    if ((count & 7) == 0 || count < 8) {
      const Real bound = tail(b + 1);
      if (bound < tol) return SeriesValue{acc.value(), bound, count};
    }
    if (count >= opt.max_terms) {
      throw ToleranceError(kModule, "series needs more than " + std::to_string(opt.max_terms) +
                                        " terms for the requested tolerance");
    }
  }
}

// Estimated number of terms for a geometric tail at parameter t; only used
// to size the Beatty evaluator's enclosure.
std::uint64_t expected_terms(const Real& t, const Real& tol) {
  const double td = static_cast<double>(t);
  const double guess = (std::log(1.0 / std::max(1e-300, static_cast<double>(tol))) + 60.0) / td;
  return static_cast<std::uint64_t>(std::min(1e12, std::max(16.0, 4 * guess)));
}

struct PartStream {
  BeattyEvaluator ev;
  std::uint64_t ell = 0;
  PartStream(const Alpha& a, std::uint64_t ell_max, unsigned bits) : ev(a, ell_max, bits) {}
  std::int64_t operator()() { return ev.floor(++ell); }
};

}  // namespace

SeriesValue beatty_log_gf(const Alpha& a, const Real& t, const Real& tol,
                          const SeriesOptions& opt) {
  require_positive(t, "t");
  require_positive(tol, "tol");
  const Geometric g(t);
  PartStream parts(a, expected_terms(t, tol), opt.frac_bits);
  return sum_until(
      std::ref(parts), [&](std::int64_t b) { return neg_log1m_exp(t * Real(b)); },
      [&](std::int64_t B) { return g.order0(B, t); }, tol, opt);
}

SeriesValue beatty_log_gf_derivative(const Alpha& a, const Real& t, int order, const Real& tol,
                                     const SeriesOptions& opt) {
  require_positive(t, "t");
  require_positive(tol, "tol");
  if (order != 1 && order != 2) throw DomainError(kModule, "derivative order must be 1 or 2");
  const Geometric g(t);
  PartStream parts(a, expected_terms(t, tol), opt.frac_bits);
  if (order == 1) {
    return sum_until(
        std::ref(parts),
        [&](std::int64_t b) {
          const Real bb(b);
          return -bb / expm1(t * bb);
        },
        [&](std::int64_t B) { return g.order1(B, t); }, tol, opt);
  }
  return sum_until(
      std::ref(parts),
      [&](std::int64_t b) {
        const Real bb(b);
        const Real inv = 1 / expm1(t * bb);
        return bb * bb * (inv + inv * inv);
      },
      [&](std::int64_t B) { return g.order2(B, t); }, tol, opt);
}

SeriesValue euler_log_gf(const Real& t, const Real& tol, const SeriesOptions& opt) {
  require_positive(t, "t");
  require_positive(tol, "tol");
  const Geometric g(t);
  std::int64_t n = 0;
  return sum_until([&] { return ++n; },
                   [&](std::int64_t b) { return neg_log1m_exp(t * Real(b)); },
                   [&](std::int64_t B) { return g.order0(B, t); }, tol, opt);
}

SeriesValue divisor_series(const Real& t, const Real& tol, const SeriesOptions& opt) {
  require_positive(t, "t");
  require_positive(tol, "tol");
  const Geometric g(t);
  std::int64_t n = 0;
  return sum_until([&] { return ++n; },
                   [&](std::int64_t b) { return 1 / expm1(t * Real(b)); },
                   [&](std::int64_t B) { return g.order0(B, t); }, tol, opt);
}

namespace {
SeriesValue sawtooth_impl(const Alpha& a, const Real& t, std::uint64_t L, const Real* tol,
                          const SeriesOptions& opt) {
  require_positive(t, "t");
  const Geometric g(t);
  const Real half_t = t / 2;
  BeattyEvaluator ev(a, tol ? expected_terms(t, *tol) : L, opt.frac_bits);
  CompensatedSum<Real> acc;
  std::int64_t b = 0;
  std::uint64_t ell = 0;
  Real bound{0};
  while (true) {
    ++ell;
    const Real f = ev.frac(ell, &b);
    const Real x = Real(b) + f;  // alpha l
    acc.add(t * (f - Real(0.5)) / expm1(t * x));
    const bool check = tol ? ((ell & 7) == 0 || ell < 8) : ell == L;
    if (check) {
      bound = half_t * g.order0(b + 1, t);
      if (!tol || bound < *tol) break;
    }
    if (ell >= opt.max_terms) {
      throw ToleranceError(kModule, "sawtooth series exceeded the term cap");
    }
  }
  return SeriesValue{acc.value(), bound, ell};
}
}  // namespace

SeriesValue sawtooth_series(const Alpha& a, const Real& t, std::uint64_t L,
                            const SeriesOptions& opt) {
  if (L == 0) throw DomainError(kModule, "L must be >= 1");
  return sawtooth_impl(a, t, L, nullptr, opt);
}

SeriesValue sawtooth_series(const Alpha& a, const Real& t, const SeriesOptions& opt) {
  require_positive(t, "t");
  // exp(-t alpha L) < 1e-20  <=>  L > 20 log(10) / (t alpha)
  const Real need = Real(20) * log(Real(10)) / (t * a.value());
  const Real L = floor(need) + 1;
  if (L > Real(opt.max_terms)) throw ToleranceError(kModule, "sawtooth series exceeded the term cap");
  return sawtooth_impl(a, t, static_cast<std::uint64_t>(L), nullptr, opt);
}

SeriesValue sawtooth_series_tol(const Alpha& a, const Real& t, const Real& tol,
                                const SeriesOptions& opt) {
  require_positive(tol, "tol");
  return sawtooth_impl(a, t, 0, &tol, opt);
}

Real sinh_kernel(const Real& u) {
  if (u < 0) throw DomainError(kModule, "kernel argument must be >= 0");
  if (u < Real(1e-4)) {
    const Real u2 = u * u;
    return 1 - u2 / 3 + u2 * u2 / 15;
  }
  if (u > 1) {
    // 4 u^2 e^{-2u} / (1 - e^{-2u})^2, no overflow for large u.
    const Real e = exp(-2 * u);
    const Real d = -expm1(-2 * u);
    return 4 * u * u * e / (d * d);
  }
  const Real s = sinh(u);
  return u * u / (s * s);
}

Real fractional_correction_term(std::int64_t b, const Real& f, const Real& t,
                                const Real& rel_tol) {
  const Real bb(b);
  if (t == 0) {
    const Real x = bb + f;
    return -(f / x + log1p(-f / x));
  }
  const Real half_t = t / 2;
  auto integrand = [&](const Real& w) {
    const Real y = bb + w;
    return w * sinh_kernel(y * half_t) / (y * y);
  };
  const auto res = quad::integrate<Real, 20>(integrand, Real(0), f, rel_tol, Real(1e-30));
  if (!res) throw ToleranceError(kModule, "quadrature did not converge");
  return res->value;
}

SeriesValue fractional_correction(const Alpha& a, const Real& t, std::uint64_t L,
                                  const Real& tol, const SeriesOptions& opt) {
  if (t < 0) throw DomainError(kModule, "t must be >= 0");
  if (L == 0) throw DomainError(kModule, "L must be >= 1");
  require_positive(tol, "tol");
  // Each term is independent; chunks carry their own evaluator.
  const Real value = chunked_sum<Real>(1, L, [&] {
    return [ev = BeattyEvaluator(a, L, opt.frac_bits), &t, &tol](std::uint64_t ell) mutable {
      std::int64_t b = 0;
      const Real f = ev.frac(ell, &b);
      return fractional_correction_term(b, f, t, tol);
    };
  });
  Real tail{0};
  const Real alpha = a.value();
  if (t == 0) {
    // -(x + log(1-x)) <= x^2 / (2(1-x)) with x <= 1/(alpha l); integral comparison.
    tail = -log1p(-1 / (alpha * Real(L))) / (2 * alpha);
  } else {
    const Geometric g(t);
    const std::int64_t bL = floor_multiple(a, L);
    tail = t * t / 2 * g.squared_order0(bL + 1, t);
  }
  return SeriesValue{value, tail, L};
}

SeriesValue fractional_correction(const Alpha& a, const Real& t, const Real& tol,
                                  const SeriesOptions& opt) {
  require_positive(t, "t");
  require_positive(tol, "tol");
  const Geometric g(t);
  const Real target = tol / 2;
  // Smallest L whose tail bound is below target, found by doubling then bisection
  // on the (monotone) bound.
  auto bound_at = [&](std::uint64_t L) {
    return t * t / 2 * g.squared_order0(floor_multiple(a, L) + 1, t);
  };
  std::uint64_t hi = 1;
  while (bound_at(hi) >= target) {
    if (hi > opt.max_terms) throw ToleranceError(kModule, "fractional correction exceeded the term cap");
    hi *= 2;
  }
  std::uint64_t lo = hi / 2;
  while (lo + 1 < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (bound_at(mid) < target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return fractional_correction(a, t, hi, tol, opt);
}

Decomposition check_decomposition(const Alpha& a, const Real& t, const Real& tol,
                                  const SeriesOptions& opt) {
  require_positive(t, "t");
  require_positive(tol, "tol");
  const Real at = a.value() * t;
  Decomposition d;
  d.t = t;
  d.log_gf = beatty_log_gf(a, t, tol, opt);
  d.euler_part = euler_log_gf(at, tol, opt);
  d.divisor_part = divisor_series(at, 2 * tol / t, opt);
  d.sawtooth_part = sawtooth_series_tol(a, t, tol, opt);
  d.fractional_part = fractional_correction(a, t, tol, opt);
  d.residual = abs(d.log_gf.value - d.euler_part.value - t / 2 * d.divisor_part.value -
                   d.sawtooth_part.value - d.fractional_part.value);
  return d;
}

}  // namespace bpart
