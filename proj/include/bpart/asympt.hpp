#pragma once

#include "bpart/alpha.hpp"
#include "bpart/estimate.hpp"
#include "bpart/real.hpp"

#include <cstdint>
#include <string>

namespace bpart {

/// Enclosure of the constant in the sharp asymptotic for p_alpha(n):
///   Lambda = 4 sqrt3 (pi e^-gamma)^(1/2a) (a/6)^(1/4a) prod_l (1 - {al}/(al)) e^(1/(2al)).
struct LambdaEstimate {
  std::string alpha_spec;
  std::uint64_t N = 0;
  std::int64_t A = 0;
  bool bound_conditional = false;  ///< A was user-supplied, not derived
  Real log_pi_alpha{0};            ///< truncated log of the product
  Real error_radius{0};            ///< truncation bound
  Real rounding_slack{0};          ///< accumulated floating-point error allowance
  Real prefactor{0};
  Real lambda_lo{0}, lambda_hi{0};
  Real lambda_center{0};
};

/// sum_{l<=N} (1/(2 a l) + log(1 - {a l}/(a l))), the truncated log of the
/// infinite product above. Chunked and compensated; deterministic.
Real sigma_m(const Alpha& a, std::uint64_t N, unsigned frac_bits = kDefaultFracBits);

/// Bound on |log prod - sigma_m(N)| for alpha with partial quotients <= A:
///   (3A/(aN)) (log N + 1/2) + (3aN - 2) / (6aN(aN - 1)).
Real error_bound(const Alpha& a, std::uint64_t N, std::int64_t A);
/// Same with A taken from the alpha; MissingBoundError if unknown.
Real error_bound(const Alpha& a, std::uint64_t N);

/// 4 sqrt3 (pi e^-gamma)^(1/2a) (a/6)^(1/4a).
Real lambda_prefactor(const Alpha& a);

LambdaEstimate lambda_constant(const Alpha& a, std::uint64_t N,
                               unsigned frac_bits = kDefaultFracBits);

/// Constant term of L(t) = pi^2/(6at) + ((1 - 1/a)/2) log t + c + o(1):
///   c = gamma/(2a) - log(2pi)/2 + ((1 - 1/a)/2) log a - sigma_m(L).
/// The sum enters with a minus sign (it collects J(1)/a and E(0)), so
/// c = log(prefactor-free part) - log prod. No tail bound is claimed.
Real c_alpha_constant(const Alpha& a, std::uint64_t L, unsigned frac_bits = kDefaultFracBits);

/// 2^(2 - 1/(2a)) (3a)^(1/4), the constant dropped from the q table column.
Real q_theorem_constant(const Alpha& a);

/// exp(pi sqrt(n/(3a))) / (2^(2-1/(2a)) (3a)^(1/4) n^(3/4)).
EstimateReport theorem_q_estimate(const Alpha& a, std::uint64_t n);
/// exp(2 pi sqrt(n/(6a))) / (Lambda n^(1 - 1/(4a))); log_lo/log_hi carry the
/// Lambda interval.
EstimateReport theorem_p_estimate(const Alpha& a, std::uint64_t n, const LambdaEstimate& lam);

/// Table columns: exp(pi sqrt(n/(3a))) n^(-3/4) and exp(2 pi sqrt(n/(6a))) n^(-1+1/(4a)).
EstimateReport constant_free_q(const Alpha& a, std::uint64_t n);
EstimateReport constant_free_p(const Alpha& a, std::uint64_t n);

}  // namespace bpart
