#include "pretrans/kripke.hpp"

#include <mutex>
#include <optional>
#include <stdexcept>
#include <unordered_map>

#include "pretrans/kernels.hpp"

namespace pretrans {

BitMatrix Closure::power(std::size_t k) const {
  if (k < powers.size()) return powers[k];
  BitMatrix p = powers.back();
  const BitMatrix& r = powers.at(1);
  for (std::size_t i = powers.size() - 1; i < k; ++i) p = kernels::multiply(p, r);
  return p;
}

BitMatrix Closure::power_union(std::size_t lo, std::size_t hi) const {
  BitMatrix acc(trans.size());
  if (lo > hi) return acc;
  const std::size_t stored_hi = std::min(hi, powers.size() - 1);
  for (std::size_t k = lo; k <= stored_hi; ++k) acc |= powers[k];
  if (hi >= powers.size()) {
    BitMatrix p = powers.back();
    for (std::size_t k = powers.size(); k <= hi; ++k) {
      p = kernels::multiply(p, powers.at(1));
      if (k >= lo) acc |= p;
    }
  }
  return acc;
}

struct Frame::Cache {
  std::once_flag once;
  std::optional<Closure> closure;
};

Frame::Frame(std::size_t size) : Frame(BitMatrix(size)) {}

Frame::Frame(BitMatrix rel) : rel_(std::move(rel)), cache_(std::make_shared<Cache>()) {
  if (rel_.size() == 0) throw std::invalid_argument("a frame needs at least one world");
}

Frame Frame::from_edges(std::size_t size, const std::vector<std::pair<World, World>>& edges) {
  BitMatrix m(size);
  for (const auto& [u, v] : edges) {
    if (u >= size || v >= size)
      throw std::invalid_argument("edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
    m.set(u, v);
  }
  return Frame(std::move(m));
}

const Closure& Frame::closure() const {
  std::call_once(cache_->once, [this] {
    Closure c;
    const std::size_t n = size();
    c.powers.reserve(n + 1);
    c.powers.push_back(BitMatrix::identity(n));
    for (std::size_t k = 1; k <= n; ++k) c.powers.push_back(kernels::multiply(c.powers.back(), rel_));
    c.trans = kernels::transitive_closure(rel_);
    c.refl_trans = c.trans | BitMatrix::identity(n);
    cache_->closure = std::move(c);
  });
  return *cache_->closure;
}

const Closure& closure(const Frame& f) { return f.closure(); }

Skeleton skeleton(const Frame& f) {
  const std::size_t n = f.size();
  const BitMatrix& star = f.closure().refl_trans;
  Skeleton s;
  s.cluster_of.assign(n, n);
  std::vector<World> rep;
  for (World w = 0; w < n; ++w) {
    if (s.cluster_of[w] != n) continue;
    const std::size_t id = s.clusters.size();
    WorldSet c(n);
    for (World v = w; v < n; ++v)
      if (star.test(w, v) && star.test(v, w)) {
        c.set(v);
        s.cluster_of[v] = id;
      }
    s.clusters.push_back(std::move(c));
    rep.push_back(w);
  }
  const std::size_t k = s.clusters.size();
  s.order = BitMatrix(k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      if (star.test(rep[a], rep[b])) s.order.set(a, b);
  return s;
}

WorldSet max_in(const Frame& f, const WorldSet& x) {
  const BitMatrix& star = f.closure().refl_trans;
  WorldSet out(f.size());
  x.for_each([&](World v) {
    const WorldSet above = star.row(v) & x;
    bool maximal = true;
    above.for_each([&](World u) {
      if (!star.test(u, v)) maximal = false;
    });
    if (maximal) out.set(v);
  });
  return out;
}

bool is_n_transitive(const Frame& f, std::size_t n) {
  if (n == 0) throw std::invalid_argument("n-transitivity needs n >= 1");
  const Closure& c = f.closure();
  return c.trans.subset_of(c.power_union(1, std::min(n, f.size())));
}

bool is_conversely_well_founded(const Frame& f) { return !f.closure().trans.any_diagonal(); }

FrameClass frame_class_checks(const Frame& f, std::size_t n) {
  FrameClass fc;
  fc.n_transitive = is_n_transitive(f, n);
  fc.conversely_well_founded = is_conversely_well_founded(f);
  fc.irreflexive = !f.rel().any_diagonal();
  return fc;
}

namespace {

void check_embedding(std::size_t small, std::size_t big, const std::vector<World>& e) {
  if (e.size() != small) throw std::invalid_argument("embedding must list one big world per small world");
  std::vector<bool> seen(big, false);
  for (World w : e) {
    if (w >= big) throw std::invalid_argument("embedding target " + std::to_string(w) + " out of range");
    if (seen[w]) throw std::invalid_argument("embedding is not injective at " + std::to_string(w));
    seen[w] = true;
  }
}

}  // namespace

SubframeRelations subframe_relations(const Frame& small, const Frame& big, const std::vector<World>& e) {
  check_embedding(small.size(), big.size(), e);
  const std::size_t n = small.size();
  SubframeRelations r;
  bool weak = true, induced = true, semi = true;
  const BitMatrix& star = small.closure().refl_trans;
  for (World a = 0; a < n; ++a)
    for (World b = 0; b < n; ++b) {
      const bool s = small.has_edge(a, b);
      const bool l = big.has_edge(e[a], e[b]);
      if (s && !l) weak = false;
      if (s != l) induced = false;
      if (l && !s && star.test(a, b)) semi = false;
    }
  r.weak_subframe = weak;
  r.subframe = weak && induced;
  r.semisubframe = weak && semi;
  if (r.subframe) {
    WorldSet image(big.size());
    for (World w : e) image.set(w);
    bool closed = true;
    for (World w : e)
      if (!big.successors(w).subset_of(image)) closed = false;
    r.generated_subframe = closed;
  }
  return r;
}

Frame restrict_frame(const Frame& f, const std::vector<World>& worlds) {
  check_embedding(worlds.size(), f.size(), worlds);
  BitMatrix m(worlds.size());
  for (std::size_t a = 0; a < worlds.size(); ++a)
    for (std::size_t b = 0; b < worlds.size(); ++b)
      if (f.has_edge(worlds[a], worlds[b])) m.set(a, b);
  return Frame(std::move(m));
}

Model::Model(Frame f, std::map<std::string, WorldSet> v) : frame(std::move(f)), valuation(std::move(v)) {
  for (const auto& [p, s] : valuation)
    if (s.universe() != frame.size())
      throw std::invalid_argument("valuation of " + p + " has the wrong universe size");
}

WorldSet Model::value(const std::string& p) const {
  const auto it = valuation.find(p);
  return it == valuation.end() ? WorldSet(frame.size()) : it->second;
}

void Model::set_value(const std::string& p, WorldSet s) {
  if (s.universe() != frame.size()) throw std::invalid_argument("valuation of " + p + " has the wrong universe size");
  valuation[p] = std::move(s);
}

namespace {

struct Evaluation {
  const Model& m;
  std::unordered_map<Formula, WorldSet, FormulaHash> memo;

  WorldSet run(const Formula& f) {
    if (const auto it = memo.find(f); it != memo.end()) return it->second;
    const std::size_t n = m.frame.size();
    WorldSet out(n);
    switch (f.op()) {
      case Op::Var:
        out = m.value(f.name());
        break;
      case Op::Bot:
        break;
      case Op::Imp:
        out = run(f.left()).complement() | run(f.right());
        break;
      case Op::Dia: {
        const WorldSet a = run(f.arg());
        for (World w = 0; w < n; ++w)
          if (m.frame.rel().row_intersects(w, a)) out.set(w);
        break;
      }
    }
    memo.emplace(f, out);
    return out;
  }
};

}  // namespace

WorldSet eval(const Model& m, const Formula& f) { return Evaluation{m, {}}.run(f); }

Model restrict_model(const Model& m, const std::vector<World>& worlds) {
  Model out(restrict_frame(m.frame, worlds));
  for (const auto& [p, s] : m.valuation) {
    WorldSet r(worlds.size());
    for (std::size_t i = 0; i < worlds.size(); ++i)
      if (s.test(worlds[i])) r.set(i);
    out.valuation.emplace(p, std::move(r));
  }
  return out;
}

}  // namespace pretrans
