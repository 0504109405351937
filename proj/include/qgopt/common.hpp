#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace qgopt {

using complexd = std::complex<double>;

/// Malformed input or configuration (process exit code 2).
class validation_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Index outside its declared range (treated as a validation failure, exit code 2).
class bounds_error : public validation_error {
public:
  using validation_error::validation_error;
};

/// Request exceeds a configured dimension or memory limit (exit code 3).
class capacity_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Arithmetic breakdown: underflow, singular solve, non-finite value (exit code 4).
class numerical_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline int default_thread_count() {
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

/// Runs body(begin, end) over a static partition of [0, n). Results must not
/// depend on the partition: chunks write disjoint slots, so any thread count
/// produces identical output.
inline void parallel_for(std::size_t n, int threads,
                         const std::function<void(std::size_t, std::size_t)>& body) {
  if (n == 0) return;
  std::size_t nt = threads < 1 ? 1 : static_cast<std::size_t>(threads);
  if (nt > n) nt = n;
  if (nt == 1) {
    body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nt - 1);
  std::size_t chunk = (n + nt - 1) / nt;
  for (std::size_t t = 1; t < nt; ++t) {
    std::size_t begin = t * chunk;
    std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(body, begin, end);
  }
  body(0, std::min(n, chunk));
  for (auto& th : pool) th.join();
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

/// Canonical double in [0, 1) from the top 53 bits of a 64-bit draw;
/// identical on every platform for a given generator state.
template <class Rng>
double canonical_uniform(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace qgopt
