#pragma once

// Error taxonomy, deterministic RNG and the parallel-for shim shared by the
// OpenMP kernels. Every kernel that uses parallel_for must produce results
// that do not depend on iteration order; the serial path (parallel = false)
// is the reference the tests compare against.

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace coex {

using Int = std::int64_t;
using Vec = std::vector<Int>;

// Bad user input: malformed files, preconditions like "H must be a subgroup".
struct InputError : std::runtime_error {
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// A mathematical property that must hold was violated. Reaching this means
// either a bug or a falsified theorem check; the CLI maps it to exit 1.
struct InvariantError : std::runtime_error {
  explicit InvariantError(const std::string& msg) : std::runtime_error(msg) {}
};

// A configured size/budget guard was exceeded.
struct ResourceError : std::runtime_error {
  explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

// Shipped catalog data failed its load-time integrity checks.
struct CatalogError : InputError {
  explicit CatalogError(const std::string& msg) : InputError(msg) {}
};

// Exact integer arithmetic is about to overflow; abort rather than wrap.
struct ArithmeticError : InvariantError {
  explicit ArithmeticError(const std::string& msg) : InvariantError(msg) {}
};

// Deterministic RNG. mt19937_64 output is specified bit-for-bit by the
// standard, and below() uses rejection sampling, so sequences are portable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw InputError("Rng::below: n must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return x % n;
  }

  Int residue(Int m) { return static_cast<Int>(below(static_cast<std::uint64_t>(m))); }

 private:
  std::mt19937_64 eng_;
};

inline bool openmp_enabled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

// Runs fn(i) for i in [0, n). With parallel = true the iterations are
// distributed over OpenMP threads; exceptions are captured and rethrown
// after the region so callers see normal error propagation.
template <class F>
void parallel_for(std::size_t n, bool parallel, F&& fn) {
#ifdef _OPENMP
  if (parallel && n > 1) {
    std::atomic<bool> failed{false};
    std::exception_ptr err = nullptr;
    std::mutex err_mutex;
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      if (failed.load(std::memory_order_relaxed)) continue;
      try {
        fn(static_cast<std::size_t>(i));
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!failed.exchange(true)) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
    return;
  }
#else
  (void)parallel;
#endif
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

inline Int mod_reduce(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace coex
