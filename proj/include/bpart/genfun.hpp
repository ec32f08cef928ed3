#pragma once

#include "bpart/alpha.hpp"
#include "bpart/real.hpp"

#include <cstdint>

namespace bpart {

/// A truncated series together with a rigorous bound on what was dropped.
struct SeriesValue {
  Real value{0};
  Real tail_bound{0};
  std::uint64_t terms_used = 0;
};

struct SeriesOptions {
  std::uint64_t max_terms = 100'000'000;
  unsigned frac_bits = kDefaultFracBits;
};

/// L(t) = -sum_{l>=1} log(1 - exp(-t floor(alpha l))), truncated once the
/// tail is provably below tol.
SeriesValue beatty_log_gf(const Alpha& a, const Real& t, const Real& tol,
                          const SeriesOptions& opt = {});

/// Termwise derivative of beatty_log_gf: order 1 gives
/// -sum b / (e^{tb} - 1) (< 0), order 2 gives sum b^2 e^{tb} / (e^{tb} - 1)^2 (> 0).
SeriesValue beatty_log_gf_derivative(const Alpha& a, const Real& t, int order, const Real& tol,
                                     const SeriesOptions& opt = {});

/// -sum_{l>=1} log(1 - e^{-tl}): the alpha = 1 case.
SeriesValue euler_log_gf(const Real& t, const Real& tol, const SeriesOptions& opt = {});

/// sum_{n>=1} 1 / (e^{nt} - 1) = sum tau(n) e^{-nt}.
SeriesValue divisor_series(const Real& t, const Real& tol, const SeriesOptions& opt = {});

/// R(t) = sum_{l>=1} t (\{alpha l\} - 1/2) / (e^{t alpha l} - 1), first L terms.
/// tail_bound reports the size of everything beyond L.
SeriesValue sawtooth_series(const Alpha& a, const Real& t, std::uint64_t L,
                            const SeriesOptions& opt = {});
/// Same, with L chosen so that exp(-t alpha L) < 1e-20.
SeriesValue sawtooth_series(const Alpha& a, const Real& t, const SeriesOptions& opt = {});
/// Same, truncated once the tail bound drops below tol.
SeriesValue sawtooth_series_tol(const Alpha& a, const Real& t, const Real& tol,
                                const SeriesOptions& opt = {});

/// K(u) = u^2 / sinh^2(u), K(0) = 1.
Real sinh_kernel(const Real& u);

/// One term of the fractional correction:
///   int_0^f w K((b + w) t / 2) / (b + w)^2 dw,
/// i.e. the double integral over 0 <= v <= u <= f with the order swapped
/// (w = f - v). b = floor(alpha l), f = {alpha l}. t = 0 is allowed.
Real fractional_correction_term(std::int64_t b, const Real& f, const Real& t,
                                const Real& rel_tol);

/// E(t) summed over l = 1..L. t = 0 uses the closed form
/// -sum (f/x + log(1 - f/x)) with x = alpha l.
SeriesValue fractional_correction(const Alpha& a, const Real& t, std::uint64_t L,
                                  const Real& tol, const SeriesOptions& opt = {});
/// E(t) for t > 0, truncated once the tail bound drops below tol / 2.
SeriesValue fractional_correction(const Alpha& a, const Real& t, const Real& tol,
                                  const SeriesOptions& opt = {});

/// The five pieces of L(t) = L1(alpha t) + (t/2) D(alpha t) + R(t) + E(t).
struct Decomposition {
  Real t;
  SeriesValue log_gf;        ///< L(t)
  SeriesValue euler_part;    ///< L1(alpha t)
  SeriesValue divisor_part;  ///< D(alpha t), enters multiplied by t/2
  SeriesValue sawtooth_part; ///< R(t)
  SeriesValue fractional_part;  ///< E(t)
  Real residual;
};

Decomposition check_decomposition(const Alpha& a, const Real& t, const Real& tol,
                                  const SeriesOptions& opt = {});

}  // namespace bpart
