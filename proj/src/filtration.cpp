#include "pretrans/filtration.hpp"

#include <limits>

#include "pretrans/kernels.hpp"
#include "pretrans/paths.hpp"
#include "pretrans/validity.hpp"

namespace pretrans {

namespace {

constexpr auto kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  return __builtin_mul_overflow(a, b, &r) ? kSaturated : r;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  return __builtin_add_overflow(a, b, &r) ? kSaturated : r;
}

std::uint64_t layer_bound(std::size_t n, std::size_t psi_size, bool gl) {
  // Ψ may be empty (ζ without ◊); the constants are taken with |Ψ| ≥ 1.
  try {
    const Bounds b = bounds(n, std::max<std::size_t>(psi_size, 1));
    return gl ? b.C_gl : b.C_k4;
  } catch (const std::overflow_error&) {
    return kSaturated;
  }
}

class Extractor {
 public:
  Extractor(const Model& big, World x, const Formula& zeta, std::size_t n, bool gl, ExtractOptions opts)
      : big_(big), x_(x), zeta_(zeta), n_(n), gl_(gl), opts_(opts) {
    if (x >= big.frame.size()) throw PreconditionError("root world out of range");
    if (n == 0) throw PreconditionError("n must be >= 1");
    if (opts.validate) {
      const LogicSpec spec = gl ? catalog::gl_sigma(n) : catalog::k4_sigma(n);
      if (!is_lambda_frame(big.frame, spec)) throw PreconditionError("big frame does not validate " + spec.name);
    }
    psi_ = analyze(zeta).psi_set;
    for (const auto& f : psi_) truth_.push_back(eval(big, f));
  }

  Extraction run() {
    const std::size_t size = big_.frame.size();
    FiltrationTrace t;
    t.psi_size = psi_.size();
    t.bound_C = layer_bound(n_, psi_.size(), gl_);
    t.root_maximal = max_in(big_.frame, eval(big_, Formula::neg(zeta_))).test(x_);

    WorldSet seen = WorldSet::single(size, x_);
    t.layers.push_back(seen);
    BitMatrix links(size);
    for (std::size_t k = 0; t.layers.back().any(); ++k) {
      if (k >= t.bound_C)
        throw std::logic_error("layer " + std::to_string(k) + " is nonempty at the bound C = " +
                               std::to_string(t.bound_C));
      WorldSet next(size);
      t.layers.back().for_each([&](World w) {
        const WorldSet succ = big_.frame.successors(w);
        for (std::size_t i = 0; i < psi_.size(); ++i) {
          const WorldSet cand = succ & truth_[i];
          if (cand.none()) continue;
          FiltrationTrace::Witness wit{k, w, psi_[i], 0, false};
          const WorldSet back = cand & seen;
          if (!gl_ && back.any()) {
            wit.witness = *back.first();
            wit.backward = true;
          } else {
            wit.witness = *max_in(big_.frame, cand).first();
            if (!seen.test(wit.witness)) next.set(wit.witness);
          }
          if (gl_ && !links.test(w, wit.witness)) {
            links.set(w, wit.witness);
            t.link_rel.emplace_back(w, wit.witness);
          }
          t.witnesses.push_back(std::move(wit));
        }
      });
      seen |= next;
      t.layers.push_back(std::move(next));
    }

    t.kept_worlds = seen;
    t.kept_rel = BitMatrix(size);
    const BitMatrix s_star = kernels::transitive_closure(links) | BitMatrix::identity(size);
    seen.for_each([&](World a) {
      seen.for_each([&](World b) {
        if (big_.frame.has_edge(a, b) && (!gl_ || s_star.test(a, b))) t.kept_rel.set(a, b);
      });
    });

    const std::vector<World> emb = seen.to_vector();
    Model small = restrict_model(big_, emb);
    if (gl_) {
      BitMatrix r(emb.size());
      for (std::size_t a = 0; a < emb.size(); ++a)
        for (std::size_t b = 0; b < emb.size(); ++b)
          if (t.kept_rel.test(emb[a], emb[b])) r.set(a, b);
      small = Model(Frame(std::move(r)), std::move(small.valuation));
    }
    Extraction out{std::move(small), emb, std::move(t)};
    if (opts_.validate) check(out);
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::logic_error(std::string(gl_ ? "GL" : "K4") + " extraction guarantee failed: " + what);
  }

  void check(const Extraction& e) const {
    if (!is_selective(e.model, big_, e.embedding, zeta_)) fail("result is not selective");
    for (const auto& phi : analyze(zeta_).subformulas) {
      const WorldSet small = eval(e.model, phi);
      const WorldSet large = eval(big_, phi);
      for (std::size_t i = 0; i < e.embedding.size(); ++i)
        if (small.test(i) != large.test(e.embedding[i])) fail("truth of " + render(phi) + " changed");
    }
    const std::size_t kept = e.embedding.size();
    const auto sb = size_bounds(psi_.size(), e.trace.bound_C);
    if (kept > sb.layer_sum) fail("kept worlds exceed the layer-sum bound");
    if (psi_.size() >= 2 && kept >= sb.power) fail("kept worlds reach |Psi|^C");
    const auto rel = subframe_relations(e.model.frame, big_.frame, e.embedding);
    if (gl_) {
      if (!rel.semisubframe) fail("kept frame is not a semisubframe");
      if (!is_conversely_well_founded(e.model.frame)) fail("kept frame is not conversely well-founded");
      if (e.model.frame.rel().any_diagonal()) fail("kept relation is reflexive somewhere");
    } else if (!rel.subframe) {
      fail("kept frame is not a subframe");
    }
  }

  const Model& big_;
  World x_;
  Formula zeta_;
  std::size_t n_;
  bool gl_;
  ExtractOptions opts_;
  std::vector<Formula> psi_;
  std::vector<WorldSet> truth_;
};

}  // namespace

std::vector<std::pair<World, Formula>> FiltrationTrace::backward_hits() const {
  std::vector<std::pair<World, Formula>> out;
  for (const auto& w : witnesses)
    if (w.backward) out.emplace_back(w.world, w.psi);
  return out;
}

SizeBounds size_bounds(std::size_t psi_size, std::uint64_t C) {
  SizeBounds b;
  if (psi_size <= 1) {
    // 0^0 = 1 and every later term is 0 or 1.
    b.layer_sum = psi_size == 0 ? (C > 0 ? 1 : 0) : C;
    b.power = (psi_size == 1 || C == 0) ? 1 : 0;
    return b;
  }
  std::uint64_t term = 1;
  for (std::uint64_t l = 0; l < C && b.layer_sum != kSaturated; ++l) {
    b.layer_sum = sat_add(b.layer_sum, term);
    term = sat_mul(term, psi_size);
  }
  b.power = 1;
  for (std::uint64_t l = 0; l < C && b.power != kSaturated; ++l) b.power = sat_mul(b.power, psi_size);
  return b;
}

Extraction extract_k4(const Model& big, World x, const Formula& zeta, std::size_t n, ExtractOptions opts) {
  return Extractor(big, x, zeta, n, false, opts).run();
}

Extraction extract_gl(const Model& big, World x, const Formula& zeta, std::size_t n, ExtractOptions opts) {
  return Extractor(big, x, zeta, n, true, opts).run();
}

bool is_selective(const Model& small, const Model& big, const std::vector<World>& embedding, const Formula& zeta) {
  const auto rel = subframe_relations(small.frame, big.frame, embedding);
  if (!rel.weak_subframe) throw PreconditionError("small model is not a weak submodel: an edge is missing in big");
  for (const auto& p : variables(zeta)) {
    const WorldSet s = small.value(p);
    const WorldSet b = big.value(p);
    for (std::size_t i = 0; i < embedding.size(); ++i)
      if (s.test(i) != b.test(embedding[i]))
        throw PreconditionError("small model is not a weak submodel: valuation of " + p + " differs");
  }
  for (const auto& psi : analyze(zeta).psi_set) {
    const WorldSet truth = eval(big, psi);
    for (std::size_t i = 0; i < embedding.size(); ++i) {
      if (!big.frame.rel().row_intersects(embedding[i], truth)) continue;
      bool kept = false;
      small.frame.successors(i).for_each([&](World j) {
        if (truth.test(embedding[j])) kept = true;
      });
      if (!kept) return false;
    }
  }
  return true;
}

std::optional<World> choose_root_k4(const Model& big, const Formula& zeta) {
  return eval(big, zeta).complement().first();
}

std::optional<World> choose_root_gl(const Model& big, const Formula& zeta) {
  return max_in(big.frame, eval(big, zeta).complement()).first();
}

nlohmann::json to_json(const FiltrationTrace& t) {
  using nlohmann::json;
  json layers = json::array();
  for (const auto& l : t.layers) layers.push_back(l.to_vector());
  json witnesses = json::array();
  for (const auto& w : t.witnesses)
    witnesses.push_back({{"layer", w.layer},
                         {"world", w.world},
                         {"psi", render(w.psi)},
                         {"witness", w.witness},
                         {"backward", w.backward}});
  json links = json::array();
  for (const auto& [a, b] : t.link_rel) links.push_back({a, b});
  json kept_edges = json::array();
  for (const auto& [a, b] : t.kept_rel.edges()) kept_edges.push_back({a, b});
  return {{"layers", layers},         {"witnesses", witnesses},       {"link_rel", links},
          {"kept_worlds", t.kept_worlds.to_vector()}, {"kept_edges", kept_edges}, {"psi_size", t.psi_size},
          {"bound_C", t.bound_C},     {"root_maximal", t.root_maximal}};
}

}  // namespace pretrans
