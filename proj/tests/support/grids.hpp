#pragma once

// Random validated frames and stacked path grids shared by unit and acceptance tests.

#include <optional>
#include <random>
#include <vector>

#include "oracle.hpp"
#include "pretrans/paths.hpp"
#include "pretrans/validity.hpp"

namespace grids {

/// Random frame of the logic with `size` worlds, or nullopt after `tries` misses.
inline std::optional<pretrans::Frame> random_logic_frame(const pretrans::LogicSpec& spec, std::size_t size,
                                                         std::mt19937_64& rng, int tries = 50) {
  for (int t = 0; t < tries; ++t) {
    auto accept = [&](const oracle::Rel& r) { return pretrans::is_lambda_frame(oracle::to_frame(r), spec); };
    if (auto r = oracle::random_accepted(size, rng, accept, spec.requires_cwf)) return oracle::to_frame(*r);
  }
  return std::nullopt;
}

/// `lines` R-paths of length n with the end of each line R*-reaching the start
/// of the next; nullopt when a random walk gets stuck.
inline std::optional<std::vector<std::vector<pretrans::World>>> random_grid(const pretrans::Frame& f, std::size_t n,
                                                                            std::size_t lines, std::mt19937_64& rng) {
  std::vector<std::vector<pretrans::World>> grid;
  pretrans::World cur = rng() % f.size();
  const auto& star = f.closure().refl_trans;
  for (std::size_t i = 0; i < lines; ++i) {
    std::vector<pretrans::World> line{cur};
    for (std::size_t j = 0; j < n; ++j) {
      const auto succ = f.successors(line.back()).to_vector();
      if (succ.empty()) return std::nullopt;
      line.push_back(succ[rng() % succ.size()]);
    }
    const auto next = star.row(line.back()).to_vector();
    cur = next[rng() % next.size()];
    grid.push_back(std::move(line));
  }
  return grid;
}

}  // namespace grids
