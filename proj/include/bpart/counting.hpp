#pragma once

#include "bpart/alpha.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace bpart {

enum class PartitionKind { Unrestricted, Distinct };

const char* to_string(PartitionKind kind);

inline constexpr std::uint64_t kDefaultCountCap = 1'000'000;

/// counts[n] for n = 0..n_max: p_alpha(n) (Unrestricted) or q_alpha(n) (Distinct).
struct PartitionTable {
  std::string alpha_spec;
  PartitionKind kind = PartitionKind::Unrestricted;
  std::uint64_t n_max = 0;
  std::vector<mpz_class> counts;
};

/// Parts floor(alpha*l) are streamed in increasing order; for each part b the
/// table is swept upward (j = b..n_max), so b may be reused.
PartitionTable count_unrestricted(const Alpha& a, std::uint64_t n_max,
                                  std::uint64_t cap = kDefaultCountCap);

/// Same parts, swept downward (j = n_max..b), so each b is used at most once.
PartitionTable count_distinct(const Alpha& a, std::uint64_t n_max,
                              std::uint64_t cap = kDefaultCountCap);

PartitionTable count_partitions(const Alpha& a, std::uint64_t n_max, PartitionKind kind,
                                std::uint64_t cap = kDefaultCountCap);

inline constexpr std::uint64_t kBruteForceLimit = 60;

/// Exhaustive enumeration of non-increasing Beatty-part lists summing to n
/// (n <= 60). Test oracle for the table builders.
mpz_class brute_force_count(const Alpha& a, std::uint64_t n, PartitionKind kind);

}  // namespace bpart
