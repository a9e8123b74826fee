#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace slqft {

enum class Exec { serial, openmp };

namespace detail {

inline constexpr std::size_t kReduceChunk = 1024;

}  // namespace detail

/// Deterministic sum of f(i) for i in [0, n). Partial sums are accumulated
/// per fixed-size chunk in index order and combined serially, so the result
/// is bit-identical for any thread count.
template <typename T, typename F>
T reduce_sum(Exec exec, std::size_t n, F&& f) {
  const std::size_t nchunk = (n + detail::kReduceChunk - 1) / detail::kReduceChunk;
  std::vector<T> partial(nchunk, T{});
#if defined(SLQFT_HAVE_OPENMP)
  if (exec == Exec::openmp) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long long c = 0; c < static_cast<long long>(nchunk); ++c) {
      const std::size_t lo = static_cast<std::size_t>(c) * detail::kReduceChunk;
      const std::size_t hi = lo + detail::kReduceChunk < n ? lo + detail::kReduceChunk : n;
      T acc{};
      for (std::size_t i = lo; i < hi; ++i) acc += f(i);
      partial[static_cast<std::size_t>(c)] = acc;
    }
  } else
#endif
  {
    (void)exec;
    for (std::size_t c = 0; c < nchunk; ++c) {
      const std::size_t lo = c * detail::kReduceChunk;
      const std::size_t hi = lo + detail::kReduceChunk < n ? lo + detail::kReduceChunk : n;
      T acc{};
      for (std::size_t i = lo; i < hi; ++i) acc += f(i);
      partial[c] = acc;
    }
  }
  T total{};
  for (const T& t : partial) total += t;
  return total;
}

}  // namespace slqft
