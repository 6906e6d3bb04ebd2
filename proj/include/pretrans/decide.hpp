#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include <json.hpp>

#include "pretrans/formula.hpp"
#include "pretrans/kripke.hpp"
#include "pretrans/validity.hpp"

namespace pretrans {

struct SearchBudget {
  std::size_t max_worlds = 4;
  /// Random frames drawn after the exhaustive phase, split evenly over the
  /// sizes exhaustive_up_to+1 .. max_worlds.
  std::uint64_t max_frames = 0;
  std::uint64_t seed = 0;
  std::size_t exhaustive_up_to = 4;
  /// Cap on size × |vars| for valuation sweeps.
  std::size_t bruteforce_cap = kDefaultBruteforceCap;
};

/// Throws std::invalid_argument when exhaustive_up_to > max_worlds or a size is 0.
void validate(const SearchBudget& b);

/// Largest size whose frames fit a 64-bit code.
inline constexpr std::size_t kMaxCodedSize = 8;
/// Largest size enumerated without an explicit override.
inline constexpr std::size_t kDefaultEnumerationCap = 5;

/// Edge (i, j) is bit i·size + j.
Frame frame_from_code(std::size_t size, std::uint64_t code);
std::uint64_t frame_code(const Frame& f);
/// Least code over all vertex permutations.
std::uint64_t canonical_code(const Frame& f);

struct EnumerateOptions {
  /// Keep only frames whose code is canonical.
  bool iso_reduce = false;
  /// Permit sizes above kDefaultEnumerationCap.
  bool allow_large = false;
};

/// All frames of one size in ascending code order; `fn` returns false to stop.
void for_each_frame(std::size_t size, const std::function<bool(const Frame&)>& fn, EnumerateOptions opts = {});
std::vector<Frame> enumerate_frames(std::size_t size, EnumerateOptions opts = {});

/// Each of the size² possible edges present independently with probability `density`.
Frame random_frame(std::size_t size, double density, std::mt19937_64& rng);

struct SearchStats {
  /// Frames examined, in scan order, up to and including a hit.
  std::uint64_t frames_scanned = 0;
  std::uint64_t exhaustive_frames = 0;
  std::uint64_t random_frames = 0;
  /// Largest frame size examined.
  std::size_t largest_size = 0;
};

struct SearchResult {
  std::optional<Refutation> countermodel;
  /// Position of the hit: size and code of the frame, and the phase.
  std::size_t frame_size = 0;
  std::uint64_t frame_code = 0;
  bool random_phase = false;
  SearchStats stats;
};

/// Scans frames (exhaustive by size, then seeded random) for a frame of the
/// logic refuting zeta. No result means none within the budget, which is not
/// a proof of derivability.
SearchResult countermodel_search(const LogicSpec& spec, const Formula& zeta, const SearchBudget& budget);

struct InclusionVerdict {
  bool counterexample = false;
  std::optional<Frame> frame;
  std::optional<SchemeId> refuted;
  SearchStats stats;
};

/// Looks for a frame validating every axiom of `strong` while refuting an
/// axiom of `weak` (which shows weak ⊄ strong).
InclusionVerdict inclusion_probe(const LogicSpec& weak, const LogicSpec& strong, const SearchBudget& budget);

nlohmann::json to_json(const SearchStats& s);

}  // namespace pretrans
