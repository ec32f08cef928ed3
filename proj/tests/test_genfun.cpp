#include "doctest.h"
#include "oracles.hpp"

#include "bpart/beatty.hpp"
#include "bpart/errors.hpp"
#include "bpart/genfun.hpp"

#include <cmath>
#include <string>
#include <vector>

using namespace bpart;

namespace {
double to_d(const Real& x) { return static_cast<double>(x); }

const Real kPi = constants::pi();

// -sum log(1 - e^{-t b}) over the given parts, in 320-bit MPFR.
double oracle_log_gf(const std::vector<long>& parts, double t) {
  oracle::Mp acc, x;
  for (long b : parts) {
    mpfr_set_d(x.get(), -t * static_cast<double>(b), MPFR_RNDN);
    mpfr_expm1(x.get(), x.get(), MPFR_RNDN);
    mpfr_neg(x.get(), x.get(), MPFR_RNDN);  // 1 - e^{-tb}
    mpfr_log(x.get(), x.get(), MPFR_RNDN);
    mpfr_sub(acc.get(), acc.get(), x.get(), MPFR_RNDN);
  }
  return acc.d();
}
}  // namespace

TEST_CASE("log generating function: small oracles") {
  const Alpha a = parse_alpha("sqrt:2");
  const SeriesValue v = beatty_log_gf(a, Real(10), Real(1e-12));
  // Parts 1, 2, 4; the next part (5) contributes e^{-50}.
  const double ref = oracle_log_gf({1, 2, 4}, 10.0);
  CHECK(std::abs(to_d(v.value) - ref) < 1e-12);
  CHECK(to_d(v.value) == doctest::Approx(4.540e-5).epsilon(1e-3));
  CHECK(v.tail_bound < Real(1e-12));
  CHECK(v.terms_used >= 1);

  const SeriesValue e = euler_log_gf(Real(10), Real(1e-12));
  CHECK(std::abs(to_d(e.value) - oracle_log_gf({1, 2, 3, 4}, 10.0)) < 1e-12);
  CHECK(to_d(e.value) == doctest::Approx(4.5403e-5).epsilon(1e-4));

  const SeriesValue d = divisor_series(Real(10), Real(1e-12));
  const double dref = 1 / std::expm1(10.0) + 1 / std::expm1(20.0) + 1 / std::expm1(30.0);
  CHECK(std::abs(to_d(d.value) - dref) < 1e-12);
  CHECK(to_d(d.value) == doctest::Approx(4.54e-5).epsilon(1e-3));

  // Larger t: monotone decrease toward 0.
  Real prev = beatty_log_gf(a, Real(1), Real(1e-20)).value;
  for (double t : {2.0, 5.0, 20.0, 50.0}) {
    const Real cur = beatty_log_gf(a, Real(t), Real(1e-30)).value;
    CHECK(cur < prev);
    CHECK(cur > 0);
    prev = cur;
  }
}

TEST_CASE("log generating function: domain and caps") {
  const Alpha a = parse_alpha("sqrt:2");
  CHECK_THROWS_AS(beatty_log_gf(a, Real(0), Real(1e-8)), DomainError);
  CHECK_THROWS_AS(beatty_log_gf(a, Real(-1), Real(1e-8)), DomainError);
  CHECK_THROWS_AS(euler_log_gf(Real(0), Real(1e-8)), DomainError);
  CHECK_THROWS_AS(divisor_series(Real(-2), Real(1e-8)), DomainError);
  CHECK_THROWS_AS(sawtooth_series(a, Real(0)), DomainError);
  CHECK_THROWS_AS(beatty_log_gf_derivative(a, Real(1), 3, Real(1e-8)), DomainError);
  SeriesOptions small;
  small.max_terms = 100;
  CHECK_THROWS_AS(beatty_log_gf(a, Real(1e-3), Real(1e-8), small), ToleranceError);
  CHECK_THROWS_AS(divisor_series(Real(1e-3), Real(1e-8), small), ToleranceError);
}

TEST_CASE("tail bounds are honored") {
  for (const char* spec : {"sqrt:2", "pi"}) {
    const Alpha a = parse_alpha(spec);
    for (double t : {1.0, 0.1, 0.01}) {
      for (double tol : {1e-6, 1e-10}) {
        const Real T(t), tl(tol);
        const Real fine = tl / 2;
        CHECK(abs(beatty_log_gf(a, T, tl).value - beatty_log_gf(a, T, fine).value) <= tl);
        CHECK(abs(euler_log_gf(T, tl).value - euler_log_gf(T, fine).value) <= tl);
        CHECK(abs(divisor_series(T, tl).value - divisor_series(T, fine).value) <= tl);
        for (int order : {1, 2}) {
          CHECK(abs(beatty_log_gf_derivative(a, T, order, tl).value -
                    beatty_log_gf_derivative(a, T, order, fine).value) <= tl);
        }
        CHECK(abs(sawtooth_series_tol(a, T, tl).value - sawtooth_series_tol(a, T, fine).value) <=
              tl);
        CHECK(abs(fractional_correction(a, T, tl).value -
                  fractional_correction(a, T, fine).value) <= tl);
      }
    }
  }
  // The reported bound really dominates what was dropped.
  const Alpha a = parse_alpha("sqrt:2");
  const SeriesValue coarse = beatty_log_gf(a, Real(0.3), Real(1e-5));
  const SeriesValue ref = beatty_log_gf(a, Real(0.3), Real(1e-32));
  CHECK(ref.value - coarse.value <= coarse.tail_bound);
  CHECK(ref.value - coarse.value >= 0);
}

TEST_CASE("Euler function transform") {
  // L1(1) = -1/24 - log(2 pi)/2 + pi^2/6 + L1(4 pi^2)
  const Real tol(1e-32);
  const Real lhs = euler_log_gf(Real(1), tol).value;
  const Real rhs = Real(-1) / 24 - log(2 * kPi) / 2 + kPi * kPi / 6 +
                   euler_log_gf(4 * kPi * kPi, tol).value;
  CHECK(abs(lhs - rhs) < Real(1e-30));

  const Real small = euler_log_gf(Real(0.01), Real(1e-12)).value;
  CHECK(to_d(small) == doctest::Approx(to_d(kPi * kPi / 6 / Real(0.01))).epsilon(0.02));
}

TEST_CASE("divisor series") {
  // sum tau(n) e^{-n/2} with tau by trial division.
  oracle::Mp acc, x;
  for (long n = 1; n <= 400; ++n) {
    long tau = 0;
    for (long k = 1; k * k <= n; ++k) {
      if (n % k == 0) tau += (k * k == n) ? 1 : 2;
    }
    mpfr_set_si(x.get(), -n, MPFR_RNDN);
    mpfr_div_ui(x.get(), x.get(), 2, MPFR_RNDN);
    mpfr_exp(x.get(), x.get(), MPFR_RNDN);
    mpfr_mul_si(x.get(), x.get(), tau, MPFR_RNDN);
    mpfr_add(acc.get(), acc.get(), x.get(), MPFR_RNDN);
  }
  const SeriesValue d = divisor_series(Real(0.5), Real(1e-25));
  CHECK(std::abs(static_cast<long double>(d.value) - acc.ld()) < 1e-17L);

  const Real t(1e-4);
  const Real dt = divisor_series(t, Real(1e-3)).value;
  CHECK(abs(t * dt + log(t) - constants::euler_gamma()) < Real(0.01));
}

TEST_CASE("sinh kernel") {
  CHECK(sinh_kernel(Real(0)) == 1);
  CHECK(to_d(sinh_kernel(Real(1))) == doctest::Approx(1 / std::pow(std::sinh(1.0), 2)).epsilon(1e-14));
  CHECK(to_d(sinh_kernel(Real(1))) == doctest::Approx(0.724062).epsilon(1e-6));
  // Taylor branch joins the direct formula smoothly.
  const Real u(0.99e-4), v(1.01e-4);
  CHECK(abs(sinh_kernel(u) - (1 - u * u / 3)) < Real(1e-16));
  CHECK(abs(sinh_kernel(v) - (1 - v * v / 3)) < Real(1e-16));
  for (double x : {5.0, 20.0, 100.0, 5000.0}) {
    const Real X(x);
    const Real k = sinh_kernel(X);
    CHECK(k > 0);
    CHECK(k <= 4 * X * X * exp(-2 * X) * Real(1.0001));
  }
  CHECK_THROWS_AS(sinh_kernel(Real(-1)), DomainError);
}

TEST_CASE("fractional correction: single term against rectangle rule") {
  // l = 1, alpha = sqrt 2, t = 1, on the original (unswapped) form
  // int_0^f (f - v) K((x - v) t / 2) / (x - v)^2 dv with x = sqrt 2.
  const long double x = std::sqrt(2.0L);
  const long double f = x - 1;
  const int n = 1'000'000;
  const long double h = f / n;
  long double acc = 0;
  for (int i = 0; i < n; ++i) {
    const long double v = (i + 0.5L) * h;
    const long double y = x - v;
    const long double s = std::sinh(y / 2);
    acc += (f - v) * ((y / 2) * (y / 2) / (s * s)) / (y * y);
  }
  acc *= h;
  const Alpha a = parse_alpha("sqrt:2");
  std::int64_t b = 0;
  const Real fr = BeattyEvaluator(a).frac(1, &b);
  const Real q = fractional_correction_term(b, fr, Real(1), Real(1e-20));
  CHECK(std::abs(static_cast<long double>(q) - acc) < 1e-8L);
}

TEST_CASE("fractional correction at t = 0") {
  const Alpha a = parse_alpha("sqrt:2");
  BeattyEvaluator ev(a);
  for (std::uint64_t ell = 1; ell <= 200; ++ell) {
    std::int64_t b = 0;
    const Real f = ev.frac(ell, &b);
    CHECK(fractional_correction_term(b, f, Real(0), Real(1e-20)) > 0);
  }
  const SeriesValue e0 = fractional_correction(a, Real(0), 100'000, Real(1e-12));
  CHECK(e0.value > 0);
  CHECK(e0.tail_bound > 0);
  // Closed form equals the kernel integral with K = 1.
  std::int64_t b = 0;
  const Real f = ev.frac(3, &b);
  CHECK(abs(fractional_correction_term(b, f, Real(0), Real(1e-20)) -
            fractional_correction_term(b, f, Real(1e-40), Real(1e-25))) < Real(1e-24));
}

TEST_CASE("fractional correction tends to its t = 0 value") {
  const Alpha a = parse_alpha("sqrt:2");
  const SeriesValue e0 = fractional_correction(a, Real(0), 1'000'000, Real(1e-12));
  Real prev(1);
  for (double t : {1e-1, 1e-2, 1e-3}) {
    const SeriesValue e = fractional_correction(a, Real(t), Real(1e-9));
    const Real gap = abs(e.value - e0.value);
    MESSAGE("t=", t, " |E(t)-E(0)|=", to_d(gap));
    CHECK(gap < prev);
    prev = gap;
  }
  CHECK(prev < Real(1e-4));
}

TEST_CASE("sawtooth series") {
  const Alpha a = parse_alpha("sqrt:2");
  const SeriesValue r = sawtooth_series(a, Real(10));
  Real majorant{0};
  for (int ell = 1; ell <= 50; ++ell) {
    majorant += Real(5) / expm1(Real(10) * a.value() * Real(ell));
  }
  CHECK(abs(r.value) <= majorant);
  CHECK(to_d(majorant) == doctest::Approx(2.27e-4).epsilon(1e-2));
  CHECK(r.tail_bound < Real(1e-20));

  // Default L makes e^{-t alpha L} < 1e-20.
  const SeriesValue r1 = sawtooth_series(a, Real(0.5));
  CHECK(exp(-Real(0.5) * a.value() * Real(r1.terms_used)) < Real(1e-20));
  CHECK(abs(r1.value - sawtooth_series(a, Real(0.5), r1.terms_used - 1).value) > 0);
}

TEST_CASE("sawtooth series approaches J(1) / alpha") {
  const Alpha a = parse_alpha("sqrt:2");
  const Real target = j_partial(a, Real(1), 1'000'000) / a.value();
  Real prev_drift(1);
  std::vector<Real> gaps;
  for (double t : {1e-2, 1e-3, 1e-4}) {
    const Real rt = sawtooth_series(a, Real(t)).value;
    const Real drift = abs(rt - target);
    const Real gap = abs(rt - sawtooth_series(a, Real(2 * t)).value);
    MESSAGE("t=", t, " |R-J/alpha|=", to_d(drift), " |R(t)-R(2t)|=", to_d(gap));
    CHECK(drift < prev_drift);
    prev_drift = drift;
    gaps.push_back(gap);
  }
  CHECK(prev_drift < Real(1e-5));
  // R(t) - R(2t) -> 0 with an oscillating sign, so its size is not monotone
  // from one grid point to the next; the envelope shrinks.
  CHECK(gaps[1] < gaps[0] / 10);
  CHECK(gaps[2] < gaps[0] / 10);
}

TEST_CASE("derivatives") {
  const Alpha a = parse_alpha("sqrt:2");
  for (double t : {0.01, 0.1, 1.0, 5.0}) {
    CHECK(beatty_log_gf_derivative(a, Real(t), 1, Real(1e-12)).value < 0);
    CHECK(beatty_log_gf_derivative(a, Real(t), 2, Real(1e-12)).value > 0);
  }
  const Real tol(1e-30);
  for (double t : {0.1, 0.5}) {
    const Real T(t);
    const Real d1 = beatty_log_gf_derivative(a, T, 1, tol).value;
    const Real d2 = beatty_log_gf_derivative(a, T, 2, tol).value;
    std::vector<Real> err1, err2;
    for (double h : {1e-3, 1e-4}) {
      const Real H(h);
      const Real lp = beatty_log_gf(a, T + H, tol).value;
      const Real lm = beatty_log_gf(a, T - H, tol).value;
      const Real l0 = beatty_log_gf(a, T, tol).value;
      err1.push_back(abs((lp - lm) / (2 * H) - d1));
      err2.push_back(abs((lp - 2 * l0 + lm) / (H * H) - d2));
    }
    // O(h^2): a tenfold smaller step cuts the error about a hundredfold.
    const Real ratio1 = err1[0] / err1[1];
    const Real ratio2 = err2[0] / err2[1];
    MESSAGE("t=", t, " fd ratios ", to_d(ratio1), " ", to_d(ratio2));
    CHECK(ratio1 > 80);
    CHECK(ratio1 < 120);
    CHECK(ratio2 > 80);
    CHECK(ratio2 < 120);
  }
}

TEST_CASE("small-t expansion") {
  const Alpha a = parse_alpha("sqrt:2");
  const Real alpha = a.value();
  const Real lead = kPi * kPi / (6 * alpha);
  const Real t(1e-4);
  const Real l0 = beatty_log_gf(a, t, Real(1e-6)).value;
  const Real l1 = beatty_log_gf_derivative(a, t, 1, Real(1e-6)).value;
  const Real l2 = beatty_log_gf_derivative(a, t, 2, Real(1e-6)).value;
  CHECK(abs(t * l0 - lead) / lead < Real(1e-2));
  CHECK(abs(t * t * l1 + lead) / lead < Real(1e-2));
  CHECK(abs(t * t * t * l2 - 2 * lead) / (2 * lead) < Real(1e-2));
  // Next order of L'.
  const Real second = t * (l1 + lead / (t * t));
  CHECK(abs(second - (1 - 1 / alpha) / 2) < Real(1e-4));
}

TEST_CASE("decomposition identity") {
  for (const char* spec : {"sqrt:2", "pi", "surd:1,1,2,5"}) {
    const Alpha a = parse_alpha(spec);
    for (double t : {0.5, 0.1, 0.05, 0.01}) {
      const Decomposition d = check_decomposition(a, Real(t), Real(1e-8));
      CHECK_MESSAGE(d.residual < Real(1e-7), std::string(spec), " t=", t, " residual=", to_d(d.residual));
    }
  }
  const Decomposition tight = check_decomposition(parse_alpha("sqrt:2"), Real(0.05), Real(1e-9));
  CHECK(tight.residual < Real(1e-8));
  CHECK_THROWS_AS(check_decomposition(parse_alpha("sqrt:2"), Real(0), Real(1e-8)), DomainError);
}
