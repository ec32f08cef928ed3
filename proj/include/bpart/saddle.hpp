#pragma once

#include "bpart/alpha.hpp"
#include "bpart/estimate.hpp"
#include "bpart/real.hpp"

#include <cstdint>

namespace bpart {

enum class SaddleEquation {
  P,  ///< L'(t) + n = 0
  Q,  ///< L'(t) - 2 L'(2t) + n = 0
};

const char* to_string(SaddleEquation e);

struct SaddleSolution {
  std::uint64_t n = 0;
  SaddleEquation equation = SaddleEquation::P;
  Real t_star{0};
  Real residual{0};  ///< |g(t_star)|
  Real bracket_lo{0}, bracket_hi{0};
  int iterations = 0;
};

inline constexpr int kSaddleMaxIterations = 200;
inline constexpr int kSaddleMaxDoublings = 60;

/// The saddle functions themselves; g is strictly increasing in t.
Real p_saddle_function(const Alpha& a, std::uint64_t n, const Real& t);
Real q_saddle_function(const Alpha& a, std::uint64_t n, const Real& t);

SaddleSolution solve_p_saddle(const Alpha& a, std::uint64_t n);
SaddleSolution solve_q_saddle(const Alpha& a, std::uint64_t n);

/// log p(n) ~ L(y) + n y - log(2 pi L''(y)) / 2.
EstimateReport estimate_p_saddle(const Alpha& a, std::uint64_t n);
/// log q(n) ~ L(x) - L(2x) + n x - log(2 pi (L''(x) - 4 L''(2x))) / 2.
EstimateReport estimate_q_saddle(const Alpha& a, std::uint64_t n);

/// Same, from an already solved root.
EstimateReport estimate_from_solution(const Alpha& a, const SaddleSolution& s);

}  // namespace bpart
