#pragma once

// Boolean relation kernels. The top-level functions are OpenMP-parallel; the
// `serial` namespace keeps straightforward reference versions that the tests
// and the benchmark compare against.

#include <cstddef>

#include "pretrans/bit_matrix.hpp"

namespace pretrans {

/// Worker count used by every OpenMP region in the library. Defaults to the
/// PRETRANS_THREADS environment variable, else the OpenMP default.
std::size_t thread_count();
void set_thread_count(std::size_t n);

namespace kernels {

/// Relational composition: (a·b)(i) = ⋃_{k ∈ a(i)} b(k).
BitMatrix multiply(const BitMatrix& a, const BitMatrix& b);

/// R⁺ by repeated squaring: T ← T ∪ T·T until stable (⌈log₂ n⌉ + 1 rounds at most).
BitMatrix transitive_closure(const BitMatrix& r);

/// ⋃_{k=lo}^{hi} R^k with R^0 = identity.
BitMatrix power_union(const BitMatrix& r, std::size_t lo, std::size_t hi);

}  // namespace kernels

namespace serial {

/// Entry-by-entry triple loop.
BitMatrix multiply(const BitMatrix& a, const BitMatrix& b);

/// Warshall's algorithm.
BitMatrix transitive_closure(const BitMatrix& r);

}  // namespace serial

}  // namespace pretrans
