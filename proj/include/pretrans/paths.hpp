#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pretrans/formula.hpp"
#include "pretrans/kripke.hpp"

namespace pretrans {

/// The constants N = nⁿ, M = N·|Ψ|ⁿ, C_k4 = n(M² + M + 1), C_gl = nM + n.
struct Bounds {
  std::uint64_t n = 0;
  std::uint64_t psi_size = 0;
  std::uint64_t N = 0;
  std::uint64_t M = 0;
  std::uint64_t C_k4 = 0;
  std::uint64_t C_gl = 0;
};

/// Throws std::invalid_argument for zero arguments, std::overflow_error when a
/// constant does not fit in 64 bits.
Bounds bounds(std::uint64_t n, std::uint64_t psi_size);

/// Ψ-labeled path u₀, ψ₀, u₁, …, ψ_{m−1}, u_m.
struct LabeledPath {
  std::vector<World> worlds;
  std::vector<Formula> labels;

  std::size_t length() const { return labels.size(); }
};

/// Raised when an input violates a documented premise; the message names it.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws PreconditionError unless u_{k+1} ∈ R(u_k) ∩ ϑ(ψ_k) for all k.
void check_labeled_path(const Model& m, const LabeledPath& p);

/// Every step lands in max(R(u_k) ∩ ϑ(ψ_k)).
bool is_optimal(const Model& m, const LabeledPath& p);

/// Lexicographically least (k, k′) with k′ ≤ k < m and u_{k′} ∈ R(u_k) ∩ ϑ(ψ_k).
std::optional<std::pair<std::size_t, std::size_t>> find_reduction(const Model& m, const LabeledPath& p);

/// max(R(u) ∩ ϑ(ψ)): the admissible next worlds of an optimal path.
WorldSet optimal_successors(const Model& m, World u, const Formula& psi);

/// Extends from `start` by the lowest-numbered optimal successor, using the
/// labels round-robin. Stops early when no successor exists.
LabeledPath greedy_optimal_path(const Model& m, World start, const std::vector<Formula>& labels, std::size_t length);

/// Index structure of a zigzag over lines u^i_0..u^i_m: lines i₁ < … < i_l
/// (1-based, as in the combinatorial argument) and entries j₂ … j_l in 1..m.
struct Zigzag {
  std::vector<std::size_t> lines;
  std::vector<std::size_t> entries;
};

/// 1 ≤ i₁ < … < i_l ≤ paths.size()−1, 1 ≤ j_k ≤ m and u^{i_k}_m R u^{i_{k+1}}_{j_{k+1}}.
bool is_zigzag(const Frame& f, const std::vector<std::vector<World>>& paths, const Zigzag& z, std::size_t m);

/// Link u^i_j R u^{i′}_{j+1} with i < i′ between stacked paths.
struct ZigzagLink {
  std::size_t i = 0;
  std::size_t i2 = 0;
  std::size_t j = 0;
  bool operator==(const ZigzagLink&) const = default;
};

struct LinkOptions {
  /// Verify that the frame validates K4_{◊²σₙ} (skipped by callers that already did).
  bool check_frame = true;
};

/// Lexicographically least (i, i′, j) with i < i′, j < n and u^i_j R u^{i′}_{j+1},
/// for at least N+1 R-paths of length n with u^i_n R* u^{i+1}_0. Throws
/// PreconditionError naming the failed premise.
ZigzagLink find_zigzag_link(const Frame& f, std::size_t n, const std::vector<std::vector<World>>& paths,
                            LinkOptions opts = {});

namespace serial {
/// Plain triple loop over (i, i′, j); no precondition checks.
std::optional<ZigzagLink> find_zigzag_link(const Frame& f, std::size_t n,
                                           const std::vector<std::vector<World>>& paths);
}  // namespace serial

/// For at least M+1 labeled paths of length n (Ψ = the labels used) with
/// u^i_n R* u^{i+1}_0: a triple i < i′, j < n with u^{i′}_{j+1} ∈ R(u^i_j) ∩ ϑ(ψ^i_j),
/// found among N+1 lines sharing one label vector.
ZigzagLink grid_link(const Model& m, std::size_t n, const std::vector<LabeledPath>& lines, LinkOptions opts = {});

/// Alternating world ids and formula strings.
nlohmann::json to_json(const LabeledPath& p);
LabeledPath path_from_json(const nlohmann::json& j);

}  // namespace pretrans
