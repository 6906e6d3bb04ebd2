#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pretrans/formula.hpp"
#include "pretrans/kripke.hpp"

namespace pretrans {

/// Layered record of an extraction run. World ids refer to the big model.
struct FiltrationTrace {
  struct Witness {
    std::size_t layer = 0;
    World world = 0;
    Formula psi;
    World witness = 0;
    /// Resolved from worlds already kept (K4 variant only).
    bool backward = false;
  };

  std::vector<WorldSet> layers;
  /// One entry per demand (w, ψ), ordered by layer, world, then formula.
  std::vector<Witness> witnesses;
  /// Accumulated link relation S (GL variant only).
  std::vector<std::pair<World, World>> link_rel;
  WorldSet kept_worlds;
  /// Kept relation on big-model ids.
  BitMatrix kept_rel;
  /// |Ψ^ζ|.
  std::size_t psi_size = 0;
  /// The layer bound C of the variant (saturated at 2⁶⁴−1).
  std::uint64_t bound_C = 0;
  /// Root lies in max(ϑ(¬ζ)) (recorded by the GL variant).
  bool root_maximal = false;

  std::vector<std::pair<World, Formula>> backward_hits() const;
};

struct Extraction {
  Model model;
  /// Small world i is big world embedding[i] (ascending).
  std::vector<World> embedding;
  FiltrationTrace trace;
};

struct ExtractOptions {
  /// Check the frame class up front and the guarantees on return. With this
  /// off, the construction still runs but nothing is asserted.
  bool validate = true;
};

/// Kept-world count bounds of a run: Σ_{l<C} |Ψ|^l (what the layer argument
/// proves) and |Ψ|^C, both saturated at 2⁶⁴−1.
struct SizeBounds {
  std::uint64_t layer_sum = 0;
  std::uint64_t power = 0;
};
SizeBounds size_bounds(std::size_t psi_size, std::uint64_t C);

/// Selective filtration over a K4_{◊²σₙ}-model. Throws PreconditionError on a
/// frame outside the class (when validating) and std::logic_error if a
/// guarantee fails.
Extraction extract_k4(const Model& big, World x, const Formula& zeta, std::size_t n, ExtractOptions opts = {});

/// Maximal-witness filtration over a GL_{◊²σₙ}-model; the kept relation is
/// R₀ ∩ S*.
Extraction extract_gl(const Model& big, World x, const Formula& zeta, std::size_t n, ExtractOptions opts = {});

/// For every kept w and ψ ∈ Ψ^ζ: R₀(w) ∩ ϑ₀(ψ) ≠ ∅ implies R(w) ∩ ϑ₀(ψ) ≠ ∅.
/// Throws PreconditionError unless small is a weak submodel of big.
bool is_selective(const Model& small, const Model& big, const std::vector<World>& embedding, const Formula& zeta);

/// Lowest world refuting ζ.
std::optional<World> choose_root_k4(const Model& big, const Formula& zeta);
/// Lowest world in max(ϑ(¬ζ)).
std::optional<World> choose_root_gl(const Model& big, const Formula& zeta);

nlohmann::json to_json(const FiltrationTrace& t);

}  // namespace pretrans
