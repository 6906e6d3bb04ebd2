#include "pretrans/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pretrans {

namespace {

std::size_t default_threads() {
  if (const char* env = std::getenv("PRETRANS_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
#ifdef _OPENMP
  return static_cast<std::size_t>(omp_get_max_threads());
#else
  return 1;
#endif
}

std::atomic<std::size_t>& configured_threads() {
  static std::atomic<std::size_t> value{default_threads()};
  return value;
}

// Below this many rows the fork/join overhead dominates the product.
constexpr std::size_t kParallelRowThreshold = 128;

}  // namespace

std::size_t thread_count() { return configured_threads().load(); }

void set_thread_count(std::size_t n) { configured_threads().store(n == 0 ? default_threads() : n); }

namespace kernels {

BitMatrix multiply(const BitMatrix& a, const BitMatrix& b) {
  const std::size_t n = a.size();
  BitMatrix c(n);
  const std::size_t stride = a.stride();
  const auto rows = static_cast<long>(n);
  [[maybe_unused]] const int threads = static_cast<int>(thread_count());
#pragma omp parallel for schedule(static) num_threads(threads) if (n >= kParallelRowThreshold)
  for (long i = 0; i < rows; ++i) {
    auto out = c.row_words(static_cast<std::size_t>(i));
    const auto in = a.row_words(static_cast<std::size_t>(i));
    for (std::size_t w = 0; w < stride; ++w) {
      std::uint64_t bits = in[w];
      while (bits) {
        const std::size_t k = w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        const auto src = b.row_words(k);
        for (std::size_t x = 0; x < stride; ++x) out[x] |= src[x];
      }
    }
  }
  return c;
}

BitMatrix transitive_closure(const BitMatrix& r) {
  BitMatrix t = r;
  for (;;) {
    BitMatrix next = t | multiply(t, t);
    if (next == t) return t;
    t = std::move(next);
  }
}

BitMatrix power_union(const BitMatrix& r, std::size_t lo, std::size_t hi) {
  const std::size_t n = r.size();
  BitMatrix acc(n);
  BitMatrix p = BitMatrix::identity(n);
  for (std::size_t k = 0; k <= hi; ++k) {
    if (k > 0) p = multiply(p, r);
    if (k >= lo) acc |= p;
  }
  return acc;
}

}  // namespace kernels

namespace serial {

BitMatrix multiply(const BitMatrix& a, const BitMatrix& b) {
  const std::size_t n = a.size();
  BitMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (a.test(i, k) && b.test(k, j)) {
          c.set(i, j);
          break;
        }
  return c;
}

BitMatrix transitive_closure(const BitMatrix& r) {
  BitMatrix t = r;
  const std::size_t n = r.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (t.test(i, k))
        for (std::size_t j = 0; j < n; ++j)
          if (t.test(k, j)) t.set(i, j);
  return t;
}

}  // namespace serial

}  // namespace pretrans
