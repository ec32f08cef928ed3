#include "bpart/asympt.hpp"
#include "bpart/errors.hpp"
#include "bpart/summation.hpp"

#include <limits>

namespace bpart {
namespace {

const char* const kModule = "asympt";

void require_N(std::uint64_t N) {
  if (N <= 10) throw DomainError(kModule, "N must be > 10");
}

void require_n(std::uint64_t n) {
  if (n < 1) throw DomainError(kModule, "n must be >= 1");
}

Real log_sum(const Alpha& a, std::uint64_t N, unsigned frac_bits) {
  return chunked_sum<Real>(1, N, [&] {
    return [ev = BeattyEvaluator(a, N, frac_bits)](std::uint64_t ell) mutable {
      std::int64_t b = 0;
      const Real f = ev.frac(ell, &b);
      const Real x = Real(b) + f;  // alpha * ell
      return 1 / (2 * x) + log1p(-f / x);
    };
  });
}

EstimateReport make_report(std::uint64_t n, PartitionKind kind, EstimateVariant v,
                           const Real& log_value) {
  EstimateReport r;
  r.n = n;
  r.kind = kind;
  r.variant = v;
  r.log_value = log_value;
  r.value = exp_to_decimal(log_value);
  return r;
}

Real q_exponent(const Alpha& a, std::uint64_t n) {
  return constants::pi() * sqrt(Real(n) / (3 * a.value()));
}

Real p_exponent(const Alpha& a, std::uint64_t n) {
  return 2 * constants::pi() * sqrt(Real(n) / (6 * a.value()));
}

Real p_power(const Alpha& a) { return 1 - 1 / (4 * a.value()); }

}  // namespace

Real sigma_m(const Alpha& a, std::uint64_t N, unsigned frac_bits) {
  require_N(N);
  return log_sum(a, N, frac_bits);
}

Real error_bound(const Alpha& a, std::uint64_t N, std::int64_t A) {
  require_N(N);
  if (A < 1) throw DomainError(kModule, "quotient bound must be >= 1");
  const Real aN = a.value() * Real(N);
  return 3 * Real(A) / aN * (log(Real(N)) + Real(0.5)) + (3 * aN - 2) / (6 * aN * (aN - 1));
}

Real error_bound(const Alpha& a, std::uint64_t N) {
  const auto A = a.quotient_bound();
  if (!A) {
    throw MissingBoundError(kModule, "no partial-quotient bound known for " + a.spec() +
                                         "; supply one with --quotient-bound");
  }
  return error_bound(a, N, *A);
}

Real lambda_prefactor(const Alpha& a) {
  const Real alpha = a.value();
  const Real log_pre = log(4 * sqrt(Real(3))) +
                       (log(constants::pi()) - constants::euler_gamma()) / (2 * alpha) +
                       log(alpha / 6) / (4 * alpha);
  return exp(log_pre);
}

LambdaEstimate lambda_constant(const Alpha& a, std::uint64_t N, unsigned frac_bits) {
  require_N(N);
  const auto A = a.quotient_bound();
  if (!A) {
    throw MissingBoundError(kModule, "no partial-quotient bound known for " + a.spec() +
                                         "; supply one with --quotient-bound");
  }
  LambdaEstimate est;
  est.alpha_spec = a.spec();
  est.N = N;
  est.A = *A;
  est.bound_conditional = a.quotient_bound_is_conditional();
  est.log_pi_alpha = sigma_m(a, N, frac_bits);
  est.error_radius = error_bound(a, N, *A);
  // Each term carries |error| < 2^-frac_bits from the fractional part plus a
  // few ulps from the arithmetic; the prefactor and exp add a few more ulps.
  // This allowance is far larger than all of them and far below the radius.
  const Real eps = std::numeric_limits<Real>::epsilon();
  est.rounding_slack = Real(N) * (ldexp(Real(1), -static_cast<int>(frac_bits)) + 16 * eps) +
                       Real(1e-30);
  const Real log_pre = log(lambda_prefactor(a));
  est.prefactor = exp(log_pre);
  const Real widen = est.error_radius + est.rounding_slack;
  est.lambda_center = exp(log_pre + est.log_pi_alpha);
  est.lambda_lo = exp(log_pre + est.log_pi_alpha - widen);
  est.lambda_hi = exp(log_pre + est.log_pi_alpha + widen);
  return est;
}

Real c_alpha_constant(const Alpha& a, std::uint64_t L, unsigned frac_bits) {
  require_N(L);
  const Real alpha = a.value();
  return constants::euler_gamma() / (2 * alpha) - log(2 * constants::pi()) / 2 +
         (1 - 1 / alpha) / 2 * log(alpha) - log_sum(a, L, frac_bits);
}

Real q_theorem_constant(const Alpha& a) {
  const Real alpha = a.value();
  return pow(Real(2), 2 - 1 / (2 * alpha)) * pow(3 * alpha, Real(0.25));
}

EstimateReport theorem_q_estimate(const Alpha& a, std::uint64_t n) {
  require_n(n);
  const Real lv = q_exponent(a, n) - log(q_theorem_constant(a)) - Real(0.75) * log(Real(n));
  return make_report(n, PartitionKind::Distinct, EstimateVariant::ClosedForm, lv);
}

EstimateReport theorem_p_estimate(const Alpha& a, std::uint64_t n, const LambdaEstimate& lam) {
  require_n(n);
  const Real base = p_exponent(a, n) - p_power(a) * log(Real(n));
  EstimateReport r = make_report(n, PartitionKind::Unrestricted, EstimateVariant::ClosedForm,
                                 base - log(lam.lambda_center));
  r.log_lo = base - log(lam.lambda_hi);
  r.log_hi = base - log(lam.lambda_lo);
  return r;
}

EstimateReport constant_free_q(const Alpha& a, std::uint64_t n) {
  require_n(n);
  return make_report(n, PartitionKind::Distinct, EstimateVariant::ConstantFree,
                     q_exponent(a, n) - Real(0.75) * log(Real(n)));
}

EstimateReport constant_free_p(const Alpha& a, std::uint64_t n) {
  require_n(n);
  return make_report(n, PartitionKind::Unrestricted, EstimateVariant::ConstantFree,
                     p_exponent(a, n) - p_power(a) * log(Real(n)));
}

}  // namespace bpart
