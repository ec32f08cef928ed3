#pragma once

#include <algorithm>
#include <cstdint>
#include <future>
#include <thread>
#include <vector>

namespace bpart {

/// Neumaier-compensated accumulator.
template <class T>
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(const T& init) : sum_(init) {}

  void add(const T& x) {
    T t = sum_ + x;
    if (abs(sum_) >= abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(const T& x) {
    add(x);
    return *this;
  }

  /// Folds another partial sum in, keeping both compensation terms.
  void merge(const CompensatedSum& other) {
    add(other.sum_);
    add(other.comp_);
  }

  T value() const { return sum_ + comp_; }

 private:
  static T abs(const T& v) { return v < 0 ? T(-v) : v; }
  T sum_{0};
  T comp_{0};
};

inline constexpr std::uint64_t kSumChunk = std::uint64_t{1} << 16;

/// Sums term(i) for i in [first, last] over fixed chunks of kSumChunk indices.
/// Chunks are evaluated on up to hardware_concurrency threads and merged in
/// chunk order, so the result does not depend on the thread count.
/// `make_term` is called once per chunk and must return a callable
/// `T(std::uint64_t)`; this lets each chunk own its own scratch state.
template <class T, class MakeTerm>
T chunked_sum(std::uint64_t first, std::uint64_t last, MakeTerm make_term) {
  if (last < first) return T(0);
  const std::uint64_t count = last - first + 1;
  const std::uint64_t chunks = (count + kSumChunk - 1) / kSumChunk;
  std::vector<CompensatedSum<T>> partial(chunks);

  auto run_chunk = [&](std::uint64_t c) {
    auto term = make_term();
    const std::uint64_t lo = first + c * kSumChunk;
    const std::uint64_t hi = std::min(last, lo + kSumChunk - 1);
    CompensatedSum<T> acc;
    for (std::uint64_t i = lo; i <= hi; ++i) acc.add(term(i));
    partial[c] = acc;
  };

  const unsigned workers =
      std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                      static_cast<unsigned>(chunks)));
  if (workers == 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::future<void>> jobs;
    for (unsigned w = 0; w < workers; ++w) {
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (std::uint64_t c = w; c < chunks; c += workers) run_chunk(c);
      }));
    }
    for (auto& j : jobs) j.get();
  }

  CompensatedSum<T> total;
  for (const auto& p : partial) total.merge(p);
  return total.value();
}

}  // namespace bpart
