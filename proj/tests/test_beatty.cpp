#include "doctest.h"
#include "oracles.hpp"

#include "bpart/beatty.hpp"
#include "bpart/errors.hpp"

#include <cmath>
#include <random>

using namespace bpart;

namespace {
double to_d(const Real& x) { return static_cast<double>(x); }

// S_alpha(x) summed term by term in 320-bit MPFR.
double oracle_S(const oracle::Mp& a, std::uint64_t x) {
  oracle::Mp acc;
  for (std::uint64_t ell = 1; ell <= x; ++ell) {
    oracle::Mp f = oracle::frac_mul(a, ell);
    mpfr_sub_d(f.get(), f.get(), 0.5, MPFR_RNDN);
    mpfr_add(acc.get(), acc.get(), f.get(), MPFR_RNDN);
  }
  return acc.d();
}
}  // namespace

TEST_CASE("sawtooth") {
  CHECK(to_d(sawtooth(Real(0.75))) == doctest::Approx(0.25));
  CHECK(to_d(sawtooth(Real(3))) == -0.5);
  CHECK(to_d(sawtooth(sqrt(Real(2)))) == doctest::Approx(-0.0857864376269049));
  CHECK(to_d(sawtooth(Real(-0.25))) == doctest::Approx(0.25));
}

TEST_CASE("beatty_prefix") {
  CHECK(beatty_prefix(parse_alpha("sqrt:2"), 6) == std::vector<std::int64_t>{1, 2, 4, 5, 7, 8});
  CHECK(beatty_prefix(parse_alpha("sqrt:2"), 1) == std::vector<std::int64_t>{1});
  CHECK(beatty_prefix(parse_alpha("pi"), 5) == std::vector<std::int64_t>{3, 6, 9, 12, 15});
  CHECK_THROWS_AS(beatty_prefix(parse_alpha("pi"), 0), DomainError);

  std::mt19937_64 rng(7);
  for (const char* spec : {"sqrt:2", "e", "surd:1,1,2,5"}) {
    const Alpha a = parse_alpha(spec);
    const std::uint64_t L = 1 + rng() % 2000;
    const auto seq = beatty_prefix(a, L);
    REQUIRE(seq.size() == L);
    for (std::uint64_t ell = 1; ell <= L; ell += 1 + rng() % 50) {
      CHECK(seq[ell - 1] == floor_multiple(a, ell));
    }
    for (std::size_t i = 1; i < seq.size(); ++i) REQUIRE(seq[i] > seq[i - 1]);
  }
}

TEST_CASE("discrepancy_sum small cases") {
  const Alpha s2 = parse_alpha("sqrt:2");
  const auto r1 = discrepancy_sum(s2, Real(1));
  CHECK(to_d(r1.s_value) == doctest::Approx(-0.0857864376269049).epsilon(1e-14));
  const oracle::Mp sq2 = oracle::surd(0, 1, 1, 2);
  const auto r3 = discrepancy_sum(s2, Real(3));
  CHECK(to_d(r3.s_value) == doctest::Approx(oracle_S(sq2, 3)).epsilon(1e-14));
  CHECK(to_d(r3.s_value) == doctest::Approx(-0.0147186257614296).epsilon(1e-12));
  // Non-integer x truncates.
  CHECK(to_d(discrepancy_sum(s2, Real(3.7)).s_value) == doctest::Approx(to_d(r3.s_value)));
  CHECK_THROWS_AS(discrepancy_sum(s2, Real(0.5)), DomainError);

  const auto r1000 = discrepancy_sum(s2, Real(1000));
  CHECK(to_d(r1000.s_value) == doctest::Approx(oracle_S(sq2, 1000)).epsilon(1e-12));
  CHECK(!discrepancy_sum(parse_alpha("pi"), Real(10)).ostrowski_bound.has_value());
}

TEST_CASE("discrepancy at 1e6 respects Ostrowski and o(x)") {
  const Alpha s2 = parse_alpha("sqrt:2");
  std::vector<Real> xs;
  for (int k = 2; k <= 6; ++k) xs.push_back(Real(std::pow(10.0, k)));
  const auto recs = discrepancy_profile(s2, xs);
  for (const auto& r : recs) {
    CHECK(abs(r.s_value) <= r.x / 2);
    REQUIRE(r.ostrowski_bound.has_value());
    CHECK(abs(r.s_value) <= *r.ostrowski_bound);
    if (r.x >= 10000) CHECK(abs(r.s_value) / r.x < Real(1e-2));
  }
  CHECK(to_d(*recs.back().ostrowski_bound) == doctest::Approx(41.4465316739).epsilon(1e-9));
  // Profile and single-point evaluation agree.
  CHECK(recs[1].s_value == discrepancy_sum(s2, Real(1000)).s_value);
}

TEST_CASE("j_partial") {
  const Alpha s2 = parse_alpha("sqrt:2");
  CHECK(to_d(j_partial(s2, Real(1), 1)) == doctest::Approx(-0.0857864376269049).epsilon(1e-14));
  CHECK(to_d(j_partial(s2, Real(1), 2)) == doctest::Approx(0.0784271247461901).epsilon(1e-13));
  CHECK_THROWS_AS(j_partial(s2, Real(0), 5), DomainError);

  // Telescoping: J_L - J_{L-1} = B1~(alpha L) / L^s.
  for (std::uint64_t L : {2ULL, 17ULL, 500ULL}) {
    for (double s : {0.5, 1.0, 2.0}) {
      const Real diff = j_partial(s2, Real(s), L) - j_partial(s2, Real(s), L - 1);
      const Real term = (frac_multiple(s2, L) - Real(0.5)) / pow(Real(L), Real(s));
      CHECK(abs(diff - term) < Real(1e-28));
    }
  }
  const std::uint64_t Ls[] = {100, 10, 1000};
  const auto prof = j_partial_profile(s2, Real(1), Ls);
  CHECK(prof[1] == j_partial(s2, Real(1), 10));
  CHECK(prof[2] == j_partial(s2, Real(1), 1000));
}
