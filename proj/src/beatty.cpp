#include "bpart/beatty.hpp"
#include "bpart/errors.hpp"
#include "bpart/summation.hpp"

#include <algorithm>
#include <numeric>

namespace bpart {
namespace {

const char* const kModule = "beatty";

std::uint64_t to_count(const Real& x) {
  if (!(x >= 1)) throw DomainError(kModule, "x must be >= 1");
  if (x > Real(1e15)) throw ResourceError(kModule, "x exceeds 1e15 terms");
  return static_cast<std::uint64_t>(floor(x));
}

std::optional<Real> ostrowski(const Alpha& a, const Real& x) {
  if (!a.quotient_bound()) return std::nullopt;
  return Real(3) / 2 * Real(*a.quotient_bound()) * log(x);
}

}  // namespace

Real sawtooth(const Real& x) { return x - floor(x) - Real(0.5); }

std::vector<std::int64_t> beatty_prefix(const Alpha& a, std::uint64_t L) {
  if (L == 0) throw DomainError(kModule, "L must be >= 1");
  BeattyEvaluator ev(a, L);
  std::vector<std::int64_t> out;
  out.reserve(L);
  for (std::uint64_t ell = 1; ell <= L; ++ell) out.push_back(ev.floor(ell));
  return out;
}

std::vector<DiscrepancyRecord> discrepancy_profile(const Alpha& a, std::span<const Real> xs,
                                                   unsigned frac_bits) {
  std::vector<std::uint64_t> ends(xs.size());
  std::transform(xs.begin(), xs.end(), ends.begin(), to_count);
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto i, auto j) { return ends[i] < ends[j]; });

  std::vector<DiscrepancyRecord> out(xs.size());
  if (xs.empty()) return out;
  BeattyEvaluator ev(a, ends[order.back()], frac_bits);
  CompensatedSum<Real> acc;
  std::uint64_t ell = 0;
  const Real half(0.5);
  for (std::size_t idx : order) {
    while (ell < ends[idx]) {
      ++ell;
      acc.add(ev.frac(ell) - half);
    }
    out[idx] = DiscrepancyRecord{xs[idx], acc.value(), ostrowski(a, xs[idx])};
  }
  return out;
}

DiscrepancyRecord discrepancy_sum(const Alpha& a, const Real& x, unsigned frac_bits) {
  const Real xs[] = {x};
  return discrepancy_profile(a, xs, frac_bits).front();
}

std::vector<Real> j_partial_profile(const Alpha& a, const Real& s,
                                    std::span<const std::uint64_t> Ls, unsigned frac_bits) {
  if (!(s > 0)) throw DomainError(kModule, "s must be > 0");
  for (auto L : Ls) {
    if (L == 0) throw DomainError(kModule, "L must be >= 1");
  }
  std::vector<std::size_t> order(Ls.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto i, auto j) { return Ls[i] < Ls[j]; });
  std::vector<Real> out(Ls.size());
  if (Ls.empty()) return out;

  BeattyEvaluator ev(a, Ls[order.back()], frac_bits);
  CompensatedSum<Real> acc;
  const bool unit = (s == 1);
  std::uint64_t ell = 0;
  for (std::size_t idx : order) {
    while (ell < Ls[idx]) {
      ++ell;
      const Real w = unit ? Real(1) / Real(ell) : Real(1) / pow(Real(ell), s);
      acc.add((ev.frac(ell) - Real(0.5)) * w);
    }
    out[idx] = acc.value();
  }
  return out;
}

Real j_partial(const Alpha& a, const Real& s, std::uint64_t L, unsigned frac_bits) {
  const std::uint64_t Ls[] = {L};
  return j_partial_profile(a, s, Ls, frac_bits).front();
}

}  // namespace bpart
