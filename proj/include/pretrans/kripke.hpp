#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "pretrans/bit_matrix.hpp"
#include "pretrans/formula.hpp"
#include "pretrans/world_set.hpp"

namespace pretrans {

/// Powers and closures of a relation.
struct Closure {
  /// R⁰ (identity) through R^size.
  std::vector<BitMatrix> powers;
  /// R⁺ = ⋃_{k>0} Rᵏ.
  BitMatrix trans;
  /// R* = R⁺ ∪ identity.
  BitMatrix refl_trans;

  /// Rᵏ for any k. Beyond the stored list the power is recomputed by
  /// Rᵏ = Rᵏ⁻¹·R starting from R^size.
  BitMatrix power(std::size_t k) const;
  /// ⋃_{k=lo}^{hi} Rᵏ.
  BitMatrix power_union(std::size_t lo, std::size_t hi) const;
};

/// Finite Kripke frame on worlds 0..size-1. Immutable; the closure record is
/// computed on first use and shared between copies.
class Frame {
 public:
  /// Throws std::invalid_argument for an empty carrier.
  explicit Frame(std::size_t size);
  explicit Frame(BitMatrix rel);
  static Frame from_edges(std::size_t size, const std::vector<std::pair<World, World>>& edges);

  std::size_t size() const { return rel_.size(); }
  const BitMatrix& rel() const { return rel_; }
  bool has_edge(World u, World v) const { return rel_.test(u, v); }
  WorldSet successors(World w) const { return rel_.row(w); }

  const Closure& closure() const;

  bool operator==(const Frame& o) const { return rel_ == o.rel_; }

 private:
  struct Cache;
  BitMatrix rel_;
  std::shared_ptr<Cache> cache_;
};

const Closure& closure(const Frame& f);

/// Clusters (mutual R*-reachability classes) and their induced order.
/// Cluster ids are numbered by their lowest world.
struct Skeleton {
  std::vector<std::size_t> cluster_of;
  std::vector<WorldSet> clusters;
  /// order.test(a, b) iff [a] ⪯ [b], i.e. some (every) world of a reaches b under R*.
  BitMatrix order;
};

Skeleton skeleton(const Frame& f);

/// { v ∈ X : ∀u ∈ X, v R* u ⇒ u R* v }.
WorldSet max_in(const Frame& f, const WorldSet& x);

struct FrameClass {
  bool n_transitive = false;
  bool conversely_well_founded = false;
  bool irreflexive = false;
};

/// Throws std::invalid_argument for n = 0.
FrameClass frame_class_checks(const Frame& f, std::size_t n);
/// R⁺ ⊆ ⋃_{k=1}^{n} Rᵏ.
bool is_n_transitive(const Frame& f, std::size_t n);
/// On a finite carrier, converse well-foundedness is irreflexivity of R⁺.
bool is_conversely_well_founded(const Frame& f);

struct SubframeRelations {
  bool weak_subframe = false;
  bool subframe = false;
  bool generated_subframe = false;
  bool semisubframe = false;
};

/// Classifies `small` against `big`, where small world i is big world
/// embedding[i]. Throws std::invalid_argument for a non-injective or
/// out-of-range embedding.
SubframeRelations subframe_relations(const Frame& small, const Frame& big, const std::vector<World>& embedding);

/// Frame induced by R restricted to the listed worlds (in list order).
Frame restrict_frame(const Frame& f, const std::vector<World>& worlds);

struct Model {
  Frame frame;
  std::map<std::string, WorldSet> valuation;

  explicit Model(Frame f) : frame(std::move(f)) {}
  Model(Frame f, std::map<std::string, WorldSet> v);

  /// ϑ(p); the empty set for variables without an entry.
  WorldSet value(const std::string& p) const;
  void set_value(const std::string& p, WorldSet s);
};

/// ϑ(f): the worlds where f holds.
WorldSet eval(const Model& m, const Formula& f);

/// Restriction of the model to the listed worlds (frame induced, valuation restricted).
Model restrict_model(const Model& m, const std::vector<World>& worlds);

}  // namespace pretrans
