#pragma once

#include <cstdint>
#include <exception>
#include <limits>
#include <span>
#include <thread>
#include <vector>

#include "eggshell/domain.hpp"

namespace eggshell::lattice {

/// Number of weak compositions of n into d parts, C(n+d-1, d-1); saturates at
/// UINT64_MAX instead of overflowing.
inline std::uint64_t shell_size(Index n, std::size_t d) {
  if (d == 0) return n == 0 ? 1 : 0;
  // C(n+d-1, d-1) built up as a product of exact binomials.
  unsigned __int128 c = 1;
  for (std::size_t j = 1; j < d; ++j) {
    c = c * static_cast<unsigned __int128>(n + static_cast<Index>(j)) / j;
    if (c > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(c);
}

/// Number of multi-indices with |i| <= N in d variables, C(N+d, d).
inline std::uint64_t ball_size(Index N, std::size_t d) { return shell_size(N, d + 1); }

namespace detail {
template <class F>
void compose(Index remaining, std::span<Index> out, std::size_t pos, F& f) {
  if (pos + 1 == out.size()) {
    out[pos] = remaining;
    f(std::span<const Index>(out.data(), out.size()));
    return;
  }
  for (Index v = remaining; v >= 0; --v) {
    out[pos] = v;
    compose(remaining - v, out, pos + 1, f);
  }
}
}  // namespace detail

/// Calls f(span<const Index>) once for every i in N^d with |i| = n, in reverse
/// lexicographic order (first coordinate largest first).
template <class F>
void for_each_weak_composition(Index n, std::span<Index> buffer, F&& f) {
  if (buffer.empty()) {
    if (n == 0) f(std::span<const Index>());
    return;
  }
  detail::compose(n, buffer, 0, f);
}

/// Runs body(n) for n = 0..N on `workers` threads. Shell n always goes to
/// worker n mod workers, and each shell is handled start to finish by one
/// thread, so per-shell results do not depend on the worker count.
template <class Body>
void parallel_shells(Index N, unsigned workers, Body&& body) {
  if (workers <= 1 || N < 1) {
    for (Index n = 0; n <= N; ++n) body(n);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (Index n = w; n <= N; n += workers) body(n);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace eggshell::lattice
