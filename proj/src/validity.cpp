#include "pretrans/validity.hpp"

#include <algorithm>
#include <charconv>
#include <map>

#include "pretrans/evaluator.hpp"
#include "pretrans/parallel.hpp"

namespace pretrans {

namespace {

constexpr std::size_t kMaxValuationBits = 62;
constexpr std::uint64_t kValuationChunk = 4096;

std::vector<std::string> sorted_vars(const Formula& phi) {
  const auto vs = variables(phi);
  return {vs.begin(), vs.end()};
}

std::size_t valuation_bits(const Frame& f, std::size_t vars, std::size_t limit) {
  const std::size_t bits = f.size() * vars;
  if (bits > limit)
    throw BudgetExceeded("brute force needs " + std::to_string(bits) + " valuation bits, cap is " +
                         std::to_string(limit));
  if (bits > kMaxValuationBits)
    throw BudgetExceeded("brute force needs " + std::to_string(bits) + " valuation bits, more than " +
                         std::to_string(kMaxValuationBits) + " are not supported");
  return bits;
}

Model model_for_counter(const Frame& f, const std::vector<std::string>& vars, std::uint64_t v) {
  Model m(f);
  const std::size_t n = f.size();
  for (std::size_t i = 0; i < vars.size(); ++i) {
    WorldSet s(n);
    for (World w = 0; w < n; ++w)
      if ((v >> (i * n + w)) & 1U) s.set(w);
    m.valuation.emplace(vars[i], std::move(s));
  }
  return m;
}

/// First valuation counter under which phi fails somewhere.
std::optional<std::uint64_t> first_refuting_counter(const Frame& f, const Formula& phi,
                                                    const std::vector<std::string>& vars, std::size_t bits) {
  const std::size_t n = f.size();
  if (n > Evaluator::kMaxWorlds) {
    // Only reachable with no variables: a single valuation.
    return eval(Model(f), phi).count() == n ? std::nullopt : std::optional<std::uint64_t>(0);
  }
  const Evaluator ev(f, phi, vars);
  const std::uint64_t total = std::uint64_t{1} << bits;
  const std::uint64_t mask = ev.full();
  return parallel_first(total, kValuationChunk, [&](std::uint64_t b, std::uint64_t e) -> std::optional<std::uint64_t> {
    std::vector<std::uint64_t> reg(ev.register_count());
    std::vector<std::uint64_t> masks(vars.size());
    for (std::uint64_t v = b; v < e; ++v) {
      for (std::size_t i = 0; i < vars.size(); ++i) masks[i] = (v >> (i * n)) & mask;
      if (ev.run(masks, reg) != mask) return v;
    }
    return std::nullopt;
  });
}

}  // namespace

bool valid_bruteforce(const Frame& f, const Formula& phi, std::size_t limit) {
  const auto vars = sorted_vars(phi);
  const std::size_t bits = valuation_bits(f, vars.size(), limit);
  return !first_refuting_counter(f, phi, vars, bits).has_value();
}

std::optional<Refutation> find_refutation(const Frame& f, const Formula& phi, std::size_t limit) {
  const auto vars = sorted_vars(phi);
  const std::size_t bits = valuation_bits(f, vars.size(), limit);
  const auto hit = first_refuting_counter(f, phi, vars, bits);
  if (!hit) return std::nullopt;
  Model m = model_for_counter(f, vars, *hit);
  const World w = *eval(m, phi).complement().first();
  return Refutation{std::move(m), w};
}

namespace serial {

bool valid_bruteforce(const Frame& f, const Formula& phi, std::size_t limit) {
  const auto vars = sorted_vars(phi);
  const std::size_t bits = valuation_bits(f, vars.size(), limit);
  const std::uint64_t total = std::uint64_t{1} << bits;
  for (std::uint64_t v = 0; v < total; ++v) {
    const Model m = model_for_counter(f, vars, v);
    if (eval(m, phi).count() != f.size()) return false;
  }
  return true;
}

}  // namespace serial

// ---------------------------------------------------------------------------
// Minimal valuations

namespace {

void prune(std::vector<WorldSet>& sets) {
  std::sort(sets.begin(), sets.end(), [](const WorldSet& a, const WorldSet& b) { return a.ordered_before(b); });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<WorldSet> kept;
  for (auto& s : sets) {
    // Sorted by size, so only earlier sets can be proper subsets.
    const bool dominated =
        std::any_of(kept.begin(), kept.end(), [&](const WorldSet& k) { return k.subset_of(s); });
    if (!dominated) kept.push_back(std::move(s));
  }
  sets = std::move(kept);
}

struct MinSetBuilder {
  const Frame& f;
  std::size_t budget;
  std::size_t built = 0;
  std::map<std::pair<const PositiveTerm*, World>, std::vector<WorldSet>> memo;

  void charge(std::size_t k) {
    built += k;
    if (built > budget)
      throw BudgetExceeded("minimal valuation search exceeded " + std::to_string(budget) + " sets");
  }

  const std::vector<WorldSet>& run(const PositiveTerm& t, World w) {
    const auto key = std::make_pair(&t, w);
    if (const auto it = memo.find(key); it != memo.end()) return it->second;
    const std::size_t n = f.size();
    std::vector<WorldSet> out;
    using K = PositiveTerm::Kind;
    switch (t.kind) {
      case K::Top:
        out.emplace_back(n);
        break;
      case K::Atom:
        out.push_back(WorldSet::single(n, w));
        break;
      case K::And: {
        const auto a = run(t.args[0], w);
        const auto& b = run(t.args[1], w);
        charge(a.size() * b.size());
        for (const auto& x : a)
          for (const auto& y : b) out.push_back(x | y);
        break;
      }
      case K::Dia:
        f.successors(w).for_each([&](World v) {
          const auto& sub = run(t.args[0], v);
          charge(sub.size());
          out.insert(out.end(), sub.begin(), sub.end());
        });
        break;
    }
    prune(out);
    return memo.emplace(key, std::move(out)).first->second;
  }
};

}  // namespace

MinSets min_p_sets(const Frame& f, World w, const Formula& gamma, std::size_t node_budget, const std::string& p) {
  if (w >= f.size()) throw std::invalid_argument("world out of range");
  const auto term = as_positive(gamma, p);
  if (!term) throw std::invalid_argument("min_p_sets needs a formula strictly positive in " + p);
  MinSetBuilder b{f, node_budget, 0, {}};
  return MinSets{b.run(*term, w)};
}

// ---------------------------------------------------------------------------
// Scheme-aware validity

namespace {

bool a4_like(const Frame& f, const Formula& gamma, bool weak) {
  const auto term = as_positive(gamma, kVarP);
  MinSetBuilder b{f, kDefaultMinSetBudget, 0, {}};
  for (World w = 0; w < f.size(); ++w) {
    WorldSet target = f.successors(w);
    if (weak) target.set(w);
    for (const auto& s : b.run(*term, w))
      if (!s.intersects(target)) return false;
  }
  return true;
}

}  // namespace

bool valid_axiom(const Frame& f, const SchemeId& id, std::size_t limit) {
  validate(id);
  const Closure& c = f.closure();
  const std::size_t n = id.n;
  switch (id.scheme) {
    case Scheme::Trans:
      return c.power(n + 1).subset_of(c.power_union(1, n));
    case Scheme::wTrans:
      return c.power(n + 1).subset_of(c.power_union(0, n));
    case Scheme::A4:
      return a4_like(f, *id.param, false);
    case Scheme::Aw4:
      return a4_like(f, *id.param, true);
    case Scheme::ALob:
      return is_conversely_well_founded(f) && a4_like(f, Formula::dia(*id.param), true);
    case Scheme::GLn:
      return is_conversely_well_founded(f) && a4_like(f, Formula::dia_n(n, Formula::var(kVarP)), true);
    case Scheme::GL2Variant: {
      const Formula p = Formula::var(kVarP);
      return is_conversely_well_founded(f) && a4_like(f, Formula::dia_n(2, Formula::conj(p, Formula::dia(p))), true);
    }
    case Scheme::ALobPlus:
      // The GL axiom for U = R ∪ … ∪ Rⁿ: U transitive and conversely well-founded.
      return is_n_transitive(f, n) && is_conversely_well_founded(f);
    case Scheme::ATPlus:
      return c.power_union(1, n).all_diagonal();
    case Scheme::ABPlus: {
      const BitMatrix u = c.power_union(1, n);
      return u == u.transpose();
    }
    case Scheme::Sigma:
    case Scheme::DiaPlus:
    case Scheme::BoxPlus:
    case Scheme::A3Plus:
    case Scheme::L2:
      return valid_bruteforce(f, scheme(id), limit);
  }
  throw std::logic_error("unknown scheme");
}

void validate(const LogicSpec& spec) {
  if (spec.pretrans_degree == 0) throw std::invalid_argument("logic " + spec.name + ": degree must be >= 1");
  for (const auto& a : spec.axioms) validate(a);
}

bool is_lambda_frame(const Frame& f, const LogicSpec& spec, std::size_t limit) {
  if (spec.requires_cwf && !is_conversely_well_founded(f)) return false;
  for (const auto& a : spec.axioms)
    if (!valid_axiom(f, a, limit)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Catalog

namespace catalog {

namespace {

const Formula& p() {
  static const Formula v = Formula::var(kVarP);
  return v;
}

Formula sigma(std::size_t n) { return scheme(SchemeId::numbered(Scheme::Sigma, n)); }

LogicSpec make(std::string name, std::vector<SchemeId> axioms, std::size_t degree, bool cwf) {
  LogicSpec s{std::move(name), std::move(axioms), std::max<std::size_t>(degree, 1), cwf};
  validate(s);
  return s;
}

std::size_t require_n(std::size_t n, std::size_t min, const char* what) {
  if (n < min) throw std::invalid_argument(std::string(what) + " needs n >= " + std::to_string(min));
  return n;
}

}  // namespace

LogicSpec k4_gamma(const Formula& gamma) {
  return make("K4[" + render(gamma) + "]", {SchemeId::with_formula(Scheme::A4, gamma)}, modal_depth(gamma) - 1,
              false);
}

LogicSpec wk4_gamma(const Formula& gamma) {
  return make("wK4[" + render(gamma) + "]", {SchemeId::with_formula(Scheme::Aw4, gamma)}, modal_depth(gamma),
              false);
}

LogicSpec gl_beta(const Formula& beta) {
  return make("GL[" + render(beta) + "]", {SchemeId::with_formula(Scheme::ALob, beta)}, modal_depth(beta), true);
}

LogicSpec k4() {
  auto s = k4_gamma(Formula::dia_n(2, p()));
  s.name = "K4";
  return s;
}

LogicSpec wk4() {
  auto s = wk4_gamma(Formula::dia_n(2, p()));
  s.name = "wK4";
  return s;
}

LogicSpec gl() {
  auto s = gl_beta(Formula::dia(p()));
  s.name = "GL";
  return s;
}

LogicSpec k4_1(std::size_t n) {
  auto s = k4_gamma(Formula::dia_n(require_n(n, 2, "K4_1"), p()));
  s.name = "K4_1_" + std::to_string(n);
  return s;
}

LogicSpec wk4_1(std::size_t n) {
  auto s = wk4_gamma(Formula::dia_n(require_n(n, 2, "wK4_1"), p()));
  s.name = "wK4_1_" + std::to_string(n);
  return s;
}

LogicSpec gl_n(std::size_t n) {
  require_n(n, 2, "GL_n");
  return make("GL_" + std::to_string(n), {SchemeId::numbered(Scheme::GLn, n)}, n - 1, true);
}

LogicSpec k4_sigma(std::size_t n) {
  auto s = k4_gamma(Formula::dia_n(2, sigma(require_n(n, 1, "K4_sigma"))));
  s.name = "K4_sigma_" + std::to_string(n);
  return s;
}

LogicSpec wk4_sigma(std::size_t n) {
  auto s = wk4_gamma(Formula::dia_n(2, sigma(require_n(n, 1, "wK4_sigma"))));
  s.name = "wK4_sigma_" + std::to_string(n);
  return s;
}

LogicSpec gl_sigma(std::size_t n) {
  auto s = gl_beta(Formula::dia(sigma(require_n(n, 1, "GL_sigma"))));
  s.name = "GL_sigma_" + std::to_string(n);
  return s;
}

LogicSpec s4_gamma(const Formula& gamma) {
  auto s = k4_gamma(gamma);
  s.name = "S4[" + render(gamma) + "]";
  s.axioms.push_back(SchemeId::numbered(Scheme::ATPlus, s.pretrans_degree));
  return s;
}

LogicSpec s5_gamma(const Formula& gamma) {
  auto s = s4_gamma(gamma);
  s.name = "S5[" + render(gamma) + "]";
  s.axioms.push_back(SchemeId::numbered(Scheme::ABPlus, s.pretrans_degree));
  return s;
}

LogicSpec k43_gamma(const Formula& gamma) {
  auto s = k4_gamma(gamma);
  s.name = "K4.3[" + render(gamma) + "]";
  s.axioms.push_back(SchemeId::numbered(Scheme::A3Plus, s.pretrans_degree));
  return s;
}

LogicSpec s43_gamma(const Formula& gamma) {
  auto s = s4_gamma(gamma);
  s.name = "S4.3[" + render(gamma) + "]";
  s.axioms.push_back(SchemeId::numbered(Scheme::A3Plus, s.pretrans_degree));
  return s;
}

LogicSpec trans_n(std::size_t n) {
  return make("Trans_" + std::to_string(n), {SchemeId::numbered(Scheme::Trans, require_n(n, 1, "Trans"))}, n, false);
}

LogicSpec wtrans_n(std::size_t n) {
  return make("wTrans_" + std::to_string(n), {SchemeId::numbered(Scheme::wTrans, require_n(n, 1, "wTrans"))}, n + 1,
              false);
}

LogicSpec l2() { return make("L2", {SchemeId::numbered(Scheme::L2, 1)}, 2, false); }

LogicSpec gl2_variant() { return make("GL2var", {SchemeId::numbered(Scheme::GL2Variant, 1)}, 2, true); }

namespace {

std::optional<std::size_t> suffix_number(std::string_view name, std::string_view prefix) {
  if (name.size() <= prefix.size() || name.substr(0, prefix.size()) != prefix) return std::nullopt;
  const auto digits = name.substr(prefix.size());
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) return std::nullopt;
  return v;
}

}  // namespace

LogicSpec resolve(std::string_view name) {
  if (name == "K4") return k4();
  if (name == "wK4") return wk4();
  if (name == "GL") return gl();
  if (name == "L2") return l2();
  if (name == "GL2var") return gl2_variant();
  // Longer prefixes first so "wK4_sigma_" is not read as "wK4_1_".
  const std::pair<std::string_view, LogicSpec (*)(std::size_t)> numbered[] = {
      {"wK4_sigma_", wk4_sigma}, {"K4_sigma_", k4_sigma}, {"GL_sigma_", gl_sigma}, {"wK4_1_", wk4_1},
      {"K4_1_", k4_1},           {"wTrans_", wtrans_n},   {"Trans_", trans_n},     {"GL_", gl_n},
  };
  for (const auto& [prefix, fn] : numbered)
    if (const auto n = suffix_number(name, prefix)) return fn(*n);
  const auto open = name.find('[');
  if (open != std::string_view::npos && name.back() == ']') {
    const auto head = name.substr(0, open);
    const Formula arg = parse(name.substr(open + 1, name.size() - open - 2));
    const std::pair<std::string_view, LogicSpec (*)(const Formula&)> parametric[] = {
        {"K4", k4_gamma},   {"wK4", wk4_gamma},  {"GL", gl_beta},      {"S4", s4_gamma},
        {"S5", s5_gamma},   {"K4.3", k43_gamma}, {"S4.3", s43_gamma},
    };
    for (const auto& [h, fn] : parametric)
      if (head == h) return fn(arg);
  }
  throw std::invalid_argument("unknown logic '" + std::string(name) + "'");
}

std::vector<std::pair<std::string, std::string>> entries() {
  return {
      {"K4", "A4 with gamma = <><>p0"},
      {"wK4", "Aw4 with gamma = <><>p0"},
      {"GL", "ALob with beta = <>p0, conversely well-founded"},
      {"K4[gamma]", "A4 with gamma strictly positive, minimal p0-depth >= 2"},
      {"wK4[gamma]", "Aw4 with gamma"},
      {"GL[beta]", "ALob with beta strictly positive, minimal p0-depth >= 1"},
      {"K4_1_<n>", "A4 with gamma = <>^n p0 (n >= 2)"},
      {"wK4_1_<n>", "Aw4 with gamma = <>^n p0 (n >= 2)"},
      {"GL_<n>", "<>p0 -> <>(p0 & ~<>^(n-1) p0) (n >= 2)"},
      {"K4_sigma_<n>", "A4 with gamma = <><>sigma_n"},
      {"wK4_sigma_<n>", "Aw4 with gamma = <><>sigma_n"},
      {"GL_sigma_<n>", "ALob with beta = <>sigma_n"},
      {"S4[gamma]", "K4[gamma] + AT_plus"},
      {"S5[gamma]", "S4[gamma] + AB_plus"},
      {"K4.3[gamma]", "K4[gamma] + A3_plus"},
      {"S4.3[gamma]", "S4[gamma] + A3_plus"},
      {"Trans_<n>", "<>^(n+1) p0 -> <>p0 | ... | <>^n p0"},
      {"wTrans_<n>", "Trans_<n> with an extra disjunct p0"},
      {"L2", "<>(p0 & <>(p1 & <>p2)) -> <>(p0 & <>p2) | <>p1 | <>p2"},
      {"GL2var", "<>p0 -> <>(p0 & ~<>(p0 & <>p0))"},
  };
}

}  // namespace catalog

nlohmann::json to_json(const LogicSpec& spec) {
  nlohmann::json axioms = nlohmann::json::array();
  for (const auto& a : spec.axioms) axioms.push_back(to_json(a));
  return {{"name", spec.name}, {"axioms", axioms}, {"n", spec.pretrans_degree}, {"cwf", spec.requires_cwf}};
}

LogicSpec logic_from_json(const nlohmann::json& j) {
  if (j.is_string()) return catalog::resolve(j.get<std::string>());
  LogicSpec s;
  s.name = j.value("name", std::string("custom"));
  for (const auto& a : j.at("axioms")) s.axioms.push_back(scheme_from_json(a));
  s.pretrans_degree = j.value("n", std::size_t{1});
  s.requires_cwf = j.value("cwf", false);
  validate(s);
  return s;
}

}  // namespace pretrans
