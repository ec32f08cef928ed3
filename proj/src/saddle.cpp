#include "bpart/saddle.hpp"
#include "bpart/errors.hpp"
#include "bpart/genfun.hpp"

#include <algorithm>

namespace bpart {
namespace {

const char* const kModule = "saddle";

// Absolute tolerance for every series evaluated here. The roots need ~1e-12
// relative accuracy and n*t amplifies errors, so the series are driven far
// below that; the geometric tails make this cheap.
Real series_tol(std::uint64_t n) { return Real(1e-24) * Real(std::max<std::uint64_t>(1, n)); }

Real d1(const Alpha& a, const Real& t, const Real& tol) {
  return beatty_log_gf_derivative(a, t, 1, tol).value;
}
Real d2(const Alpha& a, const Real& t, const Real& tol) {
  return beatty_log_gf_derivative(a, t, 2, tol).value;
}

Real g_value(const Alpha& a, std::uint64_t n, SaddleEquation eq, const Real& t) {
  const Real tol = series_tol(n);
  if (eq == SaddleEquation::P) return d1(a, t, tol) + Real(n);
  return d1(a, t, tol) - 2 * d1(a, 2 * t, tol) + Real(n);
}

Real g_slope(const Alpha& a, std::uint64_t n, SaddleEquation eq, const Real& t) {
  const Real tol = series_tol(n);
  if (eq == SaddleEquation::P) return d2(a, t, tol);
  return d2(a, t, tol) - 4 * d2(a, 2 * t, tol);
}

SaddleSolution solve(const Alpha& a, std::uint64_t n, SaddleEquation eq) {
  if (n < 1) throw DomainError(kModule, "n must be >= 1");
  const Real pi = constants::pi();
  const Real scale = eq == SaddleEquation::P ? Real(6) : Real(12);
  const Real center = pi / sqrt(scale * a.value() * Real(n));

  auto g = [&](const Real& t) {
    try {
      return g_value(a, n, eq, t);
    } catch (const ToleranceError& e) {
      throw BracketError(kModule, std::string("saddle function unavailable: ") + e.what());
    }
  };

  // g(0+) = -inf and g(inf) = n, so expanding outward always finds a sign change.
  Real lo = center, hi = center;
  Real glo = g(lo), ghi = glo;
  int doublings = 0;
  while (glo >= 0) {
    if (++doublings > kSaddleMaxDoublings) throw BracketError(kModule, "no sign change below the initial guess");
    hi = lo;
    ghi = glo;
    lo /= 2;
    glo = g(lo);
  }
  while (ghi <= 0) {
    if (++doublings > kSaddleMaxDoublings) throw BracketError(kModule, "no sign change above the initial guess");
    lo = hi;
    glo = ghi;
    hi *= 2;
    ghi = g(hi);
  }

  SaddleSolution s;
  s.n = n;
  s.equation = eq;
  s.bracket_lo = lo;
  s.bracket_hi = hi;

  // Bisect to a narrow bracket, then polish with safeguarded Newton.
  Real t = (lo + hi) / 2;
  Real gt{0};
  int it = 0;
  const Real newton_width(1e-3);
  const Real stop(1e-28);
  while (true) {
    if (++it > kSaddleMaxIterations) throw ToleranceError(kModule, "root solver hit the iteration cap");
    gt = g(t);
    if (gt == 0) break;
    if (gt < 0) {
      lo = t;
    } else {
      hi = t;
    }
    Real next;
    if ((hi - lo) > newton_width * t) {
      next = (lo + hi) / 2;
    } else {
      next = t - gt / g_slope(a, n, eq, t);
      if (!(next > lo && next < hi)) next = (lo + hi) / 2;
    }
    const Real step = abs(next - t);
    t = next;
    if (step <= stop * t) {
      gt = g(t);
      break;
    }
  }
  s.t_star = t;
  s.residual = abs(gt);
  s.iterations = it;
  if (!(s.residual < Real(1e-6) * Real(n))) {
    throw ToleranceError(kModule, "saddle residual above 1e-6 n");
  }
  return s;
}

}  // namespace

const char* to_string(SaddleEquation e) { return e == SaddleEquation::P ? "P" : "Q"; }

Real p_saddle_function(const Alpha& a, std::uint64_t n, const Real& t) {
  if (!(t > 0)) throw DomainError(kModule, "t must be > 0");
  return g_value(a, n, SaddleEquation::P, t);
}

Real q_saddle_function(const Alpha& a, std::uint64_t n, const Real& t) {
  if (!(t > 0)) throw DomainError(kModule, "t must be > 0");
  return g_value(a, n, SaddleEquation::Q, t);
}

SaddleSolution solve_p_saddle(const Alpha& a, std::uint64_t n) { return solve(a, n, SaddleEquation::P); }
SaddleSolution solve_q_saddle(const Alpha& a, std::uint64_t n) { return solve(a, n, SaddleEquation::Q); }

EstimateReport estimate_from_solution(const Alpha& a, const SaddleSolution& s) {
  const Real tol = series_tol(s.n);
  const Real two_pi = 2 * constants::pi();
  const Real t = s.t_star;
  EstimateReport r;
  r.n = s.n;
  r.variant = EstimateVariant::SaddlePoint;
  if (s.equation == SaddleEquation::P) {
    r.kind = PartitionKind::Unrestricted;
    r.log_value = beatty_log_gf(a, t, tol).value + Real(s.n) * t - log(two_pi * d2(a, t, tol)) / 2;
  } else {
    r.kind = PartitionKind::Distinct;
    const Real curv = d2(a, t, tol) - 4 * d2(a, 2 * t, tol);
    r.log_value = beatty_log_gf(a, t, tol).value - beatty_log_gf(a, 2 * t, tol).value +
                  Real(s.n) * t - log(two_pi * curv) / 2;
  }
  r.value = exp_to_decimal(r.log_value);
  return r;
}

EstimateReport estimate_p_saddle(const Alpha& a, std::uint64_t n) {
  return estimate_from_solution(a, solve_p_saddle(a, n));
}

EstimateReport estimate_q_saddle(const Alpha& a, std::uint64_t n) {
  return estimate_from_solution(a, solve_q_saddle(a, n));
}

}  // namespace bpart
