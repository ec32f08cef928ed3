#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>

namespace bpart::quad {

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1],
/// computed once per scalar type by Newton iteration on P_n.
template <class T, std::size_t N>
struct GaussLegendre {
  std::array<T, N> x{};
  std::array<T, N> w{};

  static const GaussLegendre& get() {
    static const GaussLegendre rule = build();
    return rule;
  }

 private:
  static GaussLegendre build() {
    using std::cos;
    using std::abs;
    GaussLegendre r;
    const T pi = T(3.14159265358979323846264338327950288419716939937510582Q);
    const T eps = std::numeric_limits<T>::epsilon();
    for (std::size_t i = 0; i < (N + 1) / 2; ++i) {
      T z = cos(pi * (T(i) + T(0.75)) / (T(N) + T(0.5)));
      T dp{0};
      for (int it = 0; it < 100; ++it) {
        T p0{1}, p1{0};
        for (std::size_t j = 1; j <= N; ++j) {
          T p2 = p1;
          p1 = p0;
          p0 = ((T(2 * j - 1)) * z * p1 - T(j - 1) * p2) / T(j);
        }
        dp = T(N) * (z * p0 - p1) / (z * z - T(1));
        T dz = p0 / dp;
        z -= dz;
        if (abs(dz) <= eps * T(4)) break;
      }
      {
        T p0{1}, p1{0};
        for (std::size_t j = 1; j <= N; ++j) {
          T p2 = p1;
          p1 = p0;
          p0 = ((T(2 * j - 1)) * z * p1 - T(j - 1) * p2) / T(j);
        }
        dp = T(N) * (z * p0 - p1) / (z * z - T(1));
      }
      const T wt = T(2) / ((T(1) - z * z) * dp * dp);
      r.x[i] = -z;
      r.w[i] = wt;
      r.x[N - 1 - i] = z;
      r.w[N - 1 - i] = wt;
    }
    return r;
  }
};

template <class T>
struct Result {
  T value;
  T error_estimate;
  int panels;
};

template <class T, std::size_t N, class F>
T gauss_panel(const F& f, const T& a, const T& b) {
  const auto& rule = GaussLegendre<T, N>::get();
  const T half = (b - a) / 2;
  const T mid = (a + b) / 2;
  T s{0};
  for (std::size_t i = 0; i < N; ++i) s += rule.w[i] * f(mid + half * rule.x[i]);
  return s * half;
}

namespace detail {
template <class T, std::size_t N, class F>
bool adapt(const F& f, const T& a, const T& b, const T& whole, const T& rel_tol,
           const T& abs_floor, int depth, int& panels, T& out, T& err) {
  using std::abs;
  const T mid = (a + b) / 2;
  const T left = gauss_panel<T, N>(f, a, mid);
  const T right = gauss_panel<T, N>(f, mid, b);
  panels += 2;
  const T refined = left + right;
  const T diff = abs(refined - whole);
  const T target = std::max(abs(refined) * rel_tol, abs_floor);
  if (diff <= target) {
    out += refined;
    err += diff;
    return true;
  }
  if (depth <= 0) return false;
  return adapt<T, N>(f, a, mid, left, rel_tol / 2, abs_floor / 2, depth - 1, panels, out, err) &&
         adapt<T, N>(f, mid, b, right, rel_tol / 2, abs_floor / 2, depth - 1, panels, out, err);
}
}  // namespace detail

/// Adaptive bisection with a fixed N-point Gauss-Legendre rule per panel.
/// A panel is accepted once its two halves agree with it to
/// max(rel_tol * |value|, abs_floor). Returns nullopt if max_depth is
/// exhausted before convergence.
template <class T, std::size_t N = 20, class F>
std::optional<Result<T>> integrate(const F& f, const T& a, const T& b, const T& rel_tol,
                                   const T& abs_floor = T(1e-30), int max_depth = 30) {
  int panels = 1;
  T out{0}, err{0};
  const T whole = gauss_panel<T, N>(f, a, b);
  if (!detail::adapt<T, N>(f, a, b, whole, rel_tol, abs_floor, max_depth, panels, out, err))
    return std::nullopt;
  return Result<T>{out, err, panels};
}

}  // namespace bpart::quad
