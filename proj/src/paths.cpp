#include "pretrans/paths.hpp"

#include <map>
#include <unordered_map>

#include "pretrans/parallel.hpp"
#include "pretrans/validity.hpp"

namespace pretrans {

namespace {

std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("bound does not fit in 64 bits");
  return r;
}

std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("bound does not fit in 64 bits");
  return r;
}

std::uint64_t pow(std::uint64_t base, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r = mul(r, base);
  return r;
}

/// Truth sets of labels, evaluated once per distinct formula.
class LabelCache {
 public:
  explicit LabelCache(const Model& m) : m_(m) {}
  const WorldSet& operator()(const Formula& f) {
    auto it = cache_.find(f);
    if (it == cache_.end()) it = cache_.emplace(f, eval(m_, f)).first;
    return it->second;
  }

 private:
  const Model& m_;
  std::unordered_map<Formula, WorldSet, FormulaHash> cache_;
};

}  // namespace

Bounds bounds(std::uint64_t n, std::uint64_t psi_size) {
  if (n == 0 || psi_size == 0) throw std::invalid_argument("bounds need n >= 1 and |Psi| >= 1");
  Bounds b;
  b.n = n;
  b.psi_size = psi_size;
  b.N = pow(n, n);
  b.M = mul(b.N, pow(psi_size, n));
  b.C_k4 = mul(n, add(add(mul(b.M, b.M), b.M), 1));
  b.C_gl = add(mul(n, b.M), n);
  return b;
}

void check_labeled_path(const Model& m, const LabeledPath& p) {
  if (p.worlds.size() != p.labels.size() + 1)
    throw PreconditionError("labeled path needs exactly one more world than labels");
  for (World w : p.worlds)
    if (w >= m.frame.size()) throw PreconditionError("labeled path world " + std::to_string(w) + " out of range");
  LabelCache truth(m);
  for (std::size_t k = 0; k < p.labels.size(); ++k) {
    if (!m.frame.has_edge(p.worlds[k], p.worlds[k + 1]))
      throw PreconditionError("labeled path broken: no edge at step " + std::to_string(k));
    if (!truth(p.labels[k]).test(p.worlds[k + 1]))
      throw PreconditionError("labeled path broken: label " + std::to_string(k) + " false at the next world");
  }
}

WorldSet optimal_successors(const Model& m, World u, const Formula& psi) {
  return max_in(m.frame, m.frame.successors(u) & eval(m, psi));
}

bool is_optimal(const Model& m, const LabeledPath& p) {
  check_labeled_path(m, p);
  LabelCache truth(m);
  for (std::size_t k = 0; k < p.labels.size(); ++k) {
    const WorldSet cand = m.frame.successors(p.worlds[k]) & truth(p.labels[k]);
    if (!max_in(m.frame, cand).test(p.worlds[k + 1])) return false;
  }
  return true;
}

std::optional<std::pair<std::size_t, std::size_t>> find_reduction(const Model& m, const LabeledPath& p) {
  check_labeled_path(m, p);
  LabelCache truth(m);
  for (std::size_t k = 0; k < p.labels.size(); ++k) {
    const WorldSet target = m.frame.successors(p.worlds[k]) & truth(p.labels[k]);
    for (std::size_t k2 = 0; k2 <= k; ++k2)
      if (target.test(p.worlds[k2])) return std::make_pair(k, k2);
  }
  return std::nullopt;
}

LabeledPath greedy_optimal_path(const Model& m, World start, const std::vector<Formula>& labels, std::size_t length) {
  if (labels.empty()) throw std::invalid_argument("greedy path needs at least one label");
  LabelCache truth(m);
  LabeledPath p;
  p.worlds.push_back(start);
  for (std::size_t k = 0; k < length; ++k) {
    const Formula& psi = labels[k % labels.size()];
    const WorldSet cand = max_in(m.frame, m.frame.successors(p.worlds.back()) & truth(psi));
    const auto next = cand.first();
    if (!next) break;
    p.labels.push_back(psi);
    p.worlds.push_back(*next);
  }
  return p;
}

bool is_zigzag(const Frame& f, const std::vector<std::vector<World>>& paths, const Zigzag& z, std::size_t m) {
  if (z.lines.empty() || z.entries.size() + 1 != z.lines.size()) return false;
  for (std::size_t k = 0; k < z.lines.size(); ++k) {
    const std::size_t line = z.lines[k];
    if (line < 1 || line >= paths.size() || paths[line].size() <= m) return false;
    if (k > 0 && z.lines[k - 1] >= line) return false;
  }
  for (std::size_t k = 0; k + 1 < z.lines.size(); ++k) {
    const std::size_t j = z.entries[k];
    if (j < 1 || j > m) return false;
    if (!f.has_edge(paths[z.lines[k]][m], paths[z.lines[k + 1]][j])) return false;
  }
  return true;
}

namespace {

void check_grid(const Frame& f, std::size_t n, const std::vector<std::vector<World>>& paths, std::size_t need,
                const char* what) {
  if (n == 0) throw PreconditionError("path length n must be >= 1");
  if (paths.size() < need)
    throw PreconditionError(std::string(what) + " needs at least " + std::to_string(need) + " lines, got " +
                            std::to_string(paths.size()));
  const BitMatrix& star = f.closure().refl_trans;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto& p = paths[i];
    if (p.size() != n + 1)
      throw PreconditionError("line " + std::to_string(i) + " is not a path of length " + std::to_string(n));
    for (World w : p)
      if (w >= f.size()) throw PreconditionError("line " + std::to_string(i) + " leaves the frame");
    for (std::size_t j = 0; j < n; ++j)
      if (!f.has_edge(p[j], p[j + 1]))
        throw PreconditionError("line " + std::to_string(i) + " is broken at step " + std::to_string(j));
    if (i + 1 < paths.size() && !star.test(p[n], paths[i + 1][0]))
      throw PreconditionError("connectivity missing: line " + std::to_string(i) + " does not reach line " +
                              std::to_string(i + 1) + " under R*");
  }
}

void check_frame_class(const Frame& f, std::size_t n) {
  if (!is_lambda_frame(f, catalog::k4_sigma(n)))
    throw PreconditionError("frame does not validate K4_sigma_" + std::to_string(n));
}

std::optional<std::pair<std::size_t, std::size_t>> links_from(const Frame& f, std::size_t n,
                                                              const std::vector<std::vector<World>>& paths,
                                                              std::size_t i) {
  for (std::size_t i2 = i + 1; i2 < paths.size(); ++i2)
    for (std::size_t j = 0; j < n; ++j)
      if (f.has_edge(paths[i][j], paths[i2][j + 1])) return std::make_pair(i2, j);
  return std::nullopt;
}

}  // namespace

ZigzagLink find_zigzag_link(const Frame& f, std::size_t n, const std::vector<std::vector<World>>& paths,
                            LinkOptions opts) {
  const Bounds b = bounds(n, 1);
  check_grid(f, n, paths, static_cast<std::size_t>(b.N) + 1, "zigzag link search");
  if (opts.check_frame) check_frame_class(f, n);
  const auto line = parallel_first(paths.size(), 1, [&](std::uint64_t lo, std::uint64_t hi) -> std::optional<std::uint64_t> {
    for (auto i = lo; i < hi; ++i)
      if (links_from(f, n, paths, i)) return i;
    return std::nullopt;
  });
  if (!line)
    throw std::logic_error("no zigzag link in a grid satisfying all premises; the existence argument failed");
  const auto [i2, j] = *links_from(f, n, paths, *line);
  return ZigzagLink{static_cast<std::size_t>(*line), i2, j};
}

namespace serial {

std::optional<ZigzagLink> find_zigzag_link(const Frame& f, std::size_t n,
                                           const std::vector<std::vector<World>>& paths) {
  for (std::size_t i = 0; i < paths.size(); ++i)
    for (std::size_t i2 = i + 1; i2 < paths.size(); ++i2)
      for (std::size_t j = 0; j < n; ++j)
        if (f.has_edge(paths[i][j], paths[i2][j + 1])) return ZigzagLink{i, i2, j};
  return std::nullopt;
}

}  // namespace serial

ZigzagLink grid_link(const Model& m, std::size_t n, const std::vector<LabeledPath>& lines, LinkOptions opts) {
  std::vector<std::vector<World>> worlds;
  std::map<Formula, int> psi;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& l = lines[i];
    if (l.length() != n)
      throw PreconditionError("line " + std::to_string(i) + " is not a labeled path of length " + std::to_string(n));
    check_labeled_path(m, l);
    worlds.push_back(l.worlds);
    for (const auto& f : l.labels) psi.emplace(f, 0);
  }
  if (psi.empty()) throw PreconditionError("grid needs at least one label");
  const Bounds b = bounds(n, psi.size());
  check_grid(m.frame, n, worlds, static_cast<std::size_t>(b.M) + 1, "grid link search");
  if (opts.check_frame) check_frame_class(m.frame, n);

  // Pigeonhole: the first label vector to collect N+1 lines.
  std::map<std::vector<Formula>, std::vector<std::size_t>> groups;
  const std::vector<std::size_t>* chosen = nullptr;
  for (std::size_t i = 0; i < lines.size() && !chosen; ++i) {
    auto& g = groups[lines[i].labels];
    g.push_back(i);
    if (g.size() == b.N + 1) chosen = &g;
  }
  if (!chosen) throw std::logic_error("pigeonhole failed: no label vector repeats N+1 times");

  std::vector<std::vector<World>> sub;
  for (std::size_t i : *chosen) sub.push_back(worlds[i]);
  const ZigzagLink l = find_zigzag_link(m.frame, n, sub, {false});
  return ZigzagLink{(*chosen)[l.i], (*chosen)[l.i2], l.j};
}

nlohmann::json to_json(const LabeledPath& p) {
  nlohmann::json j = nlohmann::json::array();
  for (std::size_t k = 0; k < p.worlds.size(); ++k) {
    j.push_back(p.worlds[k]);
    if (k < p.labels.size()) j.push_back(render(p.labels[k]));
  }
  return j;
}

LabeledPath path_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty() || j.size() % 2 == 0)
    throw std::invalid_argument("path JSON must alternate world ids and formulas, starting and ending with a world");
  LabeledPath p;
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (k % 2 == 0)
      p.worlds.push_back(j[k].get<World>());
    else
      p.labels.push_back(formula_from_json(j[k]));
  }
  return p;
}

}  // namespace pretrans
