#include "bpart/counting.hpp"
#include "bpart/errors.hpp"

namespace bpart {
namespace {

const char* const kModule = "counting";

void check_cap(std::uint64_t n_max, std::uint64_t cap) {
  if (n_max > cap) {
    throw ResourceError(kModule, "n_max " + std::to_string(n_max) + " exceeds cap " +
                                     std::to_string(cap));
  }
}

// Calls fn(b) for every Beatty part b <= n_max, in increasing order.
template <class Fn>
void for_each_part(const Alpha& a, std::uint64_t n_max, Fn fn) {
  // floor(alpha l) >= l, so at most n_max parts.
  BeattyEvaluator ev(a, std::max<std::uint64_t>(n_max, 1));
  for (std::uint64_t ell = 1;; ++ell) {
    const std::int64_t b = ev.floor(ell);
    if (static_cast<std::uint64_t>(b) > n_max) break;
    fn(static_cast<std::uint64_t>(b));
  }
}

void enumerate(const std::vector<std::uint64_t>& parts, std::size_t max_index,
               std::uint64_t remaining, bool distinct, mpz_class& count) {
  if (remaining == 0) {
    ++count;
    return;
  }
  // Next part is parts[i] with i <= max_index (non-increasing order).
  for (std::size_t i = max_index + 1; i-- > 0;) {
    const std::uint64_t b = parts[i];
    if (b > remaining) continue;
    if (distinct) {
      if (i == 0) {
        if (b == remaining) ++count;
        continue;
      }
      enumerate(parts, i - 1, remaining - b, distinct, count);
    } else {
      enumerate(parts, i, remaining - b, distinct, count);
    }
  }
}

}  // namespace

const char* to_string(PartitionKind kind) {
  return kind == PartitionKind::Unrestricted ? "p" : "q";
}

PartitionTable count_unrestricted(const Alpha& a, std::uint64_t n_max, std::uint64_t cap) {
  check_cap(n_max, cap);
  PartitionTable t{a.spec(), PartitionKind::Unrestricted, n_max,
                   std::vector<mpz_class>(n_max + 1, 0)};
  auto& c = t.counts;
  c[0] = 1;
  for_each_part(a, n_max, [&](std::uint64_t b) {
    for (std::uint64_t j = b; j <= n_max; ++j) c[j] += c[j - b];
  });
  return t;
}

PartitionTable count_distinct(const Alpha& a, std::uint64_t n_max, std::uint64_t cap) {
  check_cap(n_max, cap);
  PartitionTable t{a.spec(), PartitionKind::Distinct, n_max,
                   std::vector<mpz_class>(n_max + 1, 0)};
  auto& c = t.counts;
  c[0] = 1;
  for_each_part(a, n_max, [&](std::uint64_t b) {
    for (std::uint64_t j = n_max; j >= b; --j) c[j] += c[j - b];
  });
  return t;
}

PartitionTable count_partitions(const Alpha& a, std::uint64_t n_max, PartitionKind kind,
                                std::uint64_t cap) {
  return kind == PartitionKind::Unrestricted ? count_unrestricted(a, n_max, cap)
                                             : count_distinct(a, n_max, cap);
}

mpz_class brute_force_count(const Alpha& a, std::uint64_t n, PartitionKind kind) {
  if (n > kBruteForceLimit) {
    throw ResourceError(kModule, "brute force enumeration limited to n <= 60");
  }
  mpz_class count = 0;
  if (n == 0) return 1;
  std::vector<std::uint64_t> parts;
  BeattyEvaluator ev(a, n);
  for (std::uint64_t ell = 1;; ++ell) {
    const auto b = static_cast<std::uint64_t>(ev.floor(ell));
    if (b > n) break;
    parts.push_back(b);
  }
  if (parts.empty()) return 0;
  enumerate(parts, parts.size() - 1, n, kind == PartitionKind::Distinct, count);
  return count;
}

}  // namespace bpart
