#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "pretrans/kernels.hpp"

namespace pretrans {

/// Lowest index in [0, total) accepted by a range scanner, found with OpenMP.
/// `scan(begin, end)` returns the first accepted index in [begin, end) or
/// nullopt; it must not throw. Chunks are processed in blocks, so the result
/// is identical to a serial scan for every thread count.
template <class Scan>
std::optional<std::uint64_t> parallel_first(std::uint64_t total, std::uint64_t chunk, Scan&& scan) {
  constexpr auto kNone = std::numeric_limits<std::uint64_t>::max();
  const auto threads = static_cast<int>(thread_count());
  chunk = std::max<std::uint64_t>(chunk, 1);
  const std::uint64_t per_block = static_cast<std::uint64_t>(threads) * 4;
  for (std::uint64_t start = 0; start < total;) {
    const std::uint64_t chunks = std::min(per_block, (total - start + chunk - 1) / chunk);
    std::vector<std::uint64_t> hits(chunks, kNone);
    const auto count = static_cast<long long>(chunks);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads) if (threads > 1 && chunks > 1)
    for (long long c = 0; c < count; ++c) {
      const std::uint64_t b = start + static_cast<std::uint64_t>(c) * chunk;
      const std::uint64_t e = std::min(total, b + chunk);
      if (const auto hit = scan(b, e)) hits[static_cast<std::size_t>(c)] = *hit;
    }
    const auto best = *std::min_element(hits.begin(), hits.end());
    if (best != kNone) return best;
    start = std::min(total, start + chunks * chunk);
  }
  return std::nullopt;
}

}  // namespace pretrans
