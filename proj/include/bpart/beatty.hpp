#pragma once

#include "bpart/alpha.hpp"
#include "bpart/real.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace bpart {

/// B1~(x) = {x} - 1/2, in [-1/2, 1/2).
Real sawtooth(const Real& x);

/// [floor(alpha*1), ..., floor(alpha*L)].
std::vector<std::int64_t> beatty_prefix(const Alpha& a, std::uint64_t L);

struct DiscrepancyRecord {
  Real x;
  Real s_value;  ///< S_alpha(x) = sum_{1 <= l <= x} B1~(alpha l)
  std::optional<Real> ostrowski_bound;  ///< (3/2) A log x, when A is known
};

/// S_alpha(x) for a single x >= 1.
DiscrepancyRecord discrepancy_sum(const Alpha& a, const Real& x,
                                  unsigned frac_bits = kDefaultFracBits);

/// S_alpha at many points in one streaming pass; `xs` need not be sorted.
std::vector<DiscrepancyRecord> discrepancy_profile(const Alpha& a, std::span<const Real> xs,
                                                   unsigned frac_bits = kDefaultFracBits);

/// sum_{l=1}^{L} B1~(alpha l) / l^s (no convergence claim).
Real j_partial(const Alpha& a, const Real& s, std::uint64_t L,
               unsigned frac_bits = kDefaultFracBits);

/// Partial sums of J_alpha(s) at each requested L, one streaming pass.
std::vector<Real> j_partial_profile(const Alpha& a, const Real& s,
                                    std::span<const std::uint64_t> Ls,
                                    unsigned frac_bits = kDefaultFracBits);

}  // namespace bpart
