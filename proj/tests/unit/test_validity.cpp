#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "pretrans/validity.hpp"

using namespace pretrans;
using F = Formula;

namespace {

const F p = F::var("p0");

Frame cycle(std::size_t n) {
  std::vector<std::pair<World, World>> e;
  for (std::size_t i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Frame::from_edges(n, e);
}

Frame complete_reflexive(std::size_t n) {
  std::vector<std::pair<World, World>> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) e.emplace_back(i, j);
  return Frame::from_edges(n, e);
}

/// All subsets of worlds making gamma true at w, reduced to the ⊆-minimal ones.
std::vector<WorldSet> min_sets_oracle(const Frame& f, World w, const F& gamma) {
  const std::size_t n = f.size();
  std::vector<WorldSet> sats;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
    Model m(f);
    WorldSet s(n);
    for (World v = 0; v < n; ++v)
      if ((code >> v) & 1U) s.set(v);
    m.set_value("p0", s);
    if (oracle::eval(m, gamma)[w]) sats.push_back(s);
  }
  std::vector<WorldSet> out;
  for (const auto& s : sats) {
    bool minimal = true;
    for (const auto& t : sats)
      if (t != s && t.subset_of(s)) minimal = false;
    if (minimal) out.push_back(s);
  }
  return out;
}

bool same_family(std::vector<WorldSet> a, std::vector<WorldSet> b) {
  auto key = [](const WorldSet& s) { return s.to_vector(); };
  auto cmp = [&](const WorldSet& x, const WorldSet& y) { return key(x) < key(y); };
  std::sort(a.begin(), a.end(), cmp);
  std::sort(b.begin(), b.end(), cmp);
  return a == b;
}

}  // namespace

TEST_CASE("bruteforce examples") {
  const F gl_axiom = scheme(SchemeId::with_formula(Scheme::ALob, F::dia(p)));
  CHECK(valid_bruteforce(Frame(1), gl_axiom));
  CHECK_FALSE(valid_bruteforce(cycle(2), scheme(SchemeId::numbered(Scheme::Trans, 1))));
  CHECK(valid_bruteforce(cycle(2), scheme(SchemeId::numbered(Scheme::wTrans, 1))));

  const auto ref = find_refutation(cycle(2), scheme(SchemeId::numbered(Scheme::Trans, 1)));
  REQUIRE(ref.has_value());
  CHECK(ref->model.value("p0").to_vector() == std::vector<World>{0});
  CHECK(ref->world == 0);
  CHECK_FALSE(oracle::eval(ref->model, scheme(SchemeId::numbered(Scheme::Trans, 1)))[ref->world]);
}

TEST_CASE("bruteforce budget") {
  const F f = F::imp(F::var("p0"), F::var("p1"));
  CHECK_THROWS_AS(valid_bruteforce(Frame(13), f), BudgetExceeded);
  CHECK_NOTHROW(valid_bruteforce(Frame(12), f));
  CHECK_THROWS_AS(valid_bruteforce(Frame(40), f, 100), BudgetExceeded);
  CHECK(valid_bruteforce(Frame(100), F::top()));
}

TEST_CASE("bruteforce agrees with the serial reference and the naive oracle") {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 400; ++rep) {
    const std::size_t n = 1 + rng() % 5;
    const Frame f = oracle::to_frame(oracle::random_rel(n, 0.35, rng));
    const F phi = oracle::random_formula(rng, 3, 2, 10);
    const bool v = valid_bruteforce(f, phi);
    CHECK(v == serial::valid_bruteforce(f, phi));
    CHECK(v == oracle::valid(f, phi));
    CHECK(v == !find_refutation(f, phi).has_value());
  }
}

TEST_CASE("min_p_sets examples") {
  const auto c3 = min_p_sets(cycle(3), 0, F::dia_n(2, p));
  REQUIRE(c3.antichain.size() == 1);
  CHECK(c3.antichain[0].to_vector() == std::vector<World>{2});
  const auto top = min_p_sets(cycle(3), 0, F::top());
  REQUIRE(top.antichain.size() == 1);
  CHECK(top.antichain[0].none());
  CHECK(min_p_sets(Frame(1), 0, F::conj(p, F::dia(p))).antichain.empty());
  CHECK_THROWS_AS(min_p_sets(Frame(1), 0, F::neg(p)), std::invalid_argument);
}

TEST_CASE("min_p_sets agrees with subset enumeration") {
  std::mt19937_64 rng(41);
  const std::vector<F> gammas = {
      F::dia(p), F::dia_n(2, p), F::dia(F::conj(p, F::dia(p))), F::dia_n(2, F::conj(p, F::dia(p))),
      F::conj(F::dia(p), F::dia_n(3, p)), F::dia(F::conj(F::dia(p), F::dia(F::dia(p)))), F::top(),
  };
  for (int rep = 0; rep < 150; ++rep) {
    const std::size_t n = 1 + rng() % 6;
    const Frame f = oracle::to_frame(oracle::random_rel(n, 0.35, rng));
    for (const auto& g : gammas)
      for (World w = 0; w < n; ++w) CHECK(same_family(min_p_sets(f, w, g).antichain, min_sets_oracle(f, w, g)));
  }
}

TEST_CASE("valid_axiom examples") {
  CHECK_FALSE(valid_axiom(cycle(3), SchemeId::with_formula(Scheme::A4, F::dia_n(3, p))));
  for (const auto& g : {F::dia_n(2, p), F::dia_n(3, p), F::dia_n(2, F::conj(p, F::dia(p)))})
    CHECK(valid_axiom(complete_reflexive(3), SchemeId::with_formula(Scheme::A4, g)));
  CHECK_FALSE(valid_axiom(cycle(2), SchemeId::with_formula(Scheme::ALob, F::dia(p))));
  CHECK_THROWS_AS(valid_axiom(cycle(2), SchemeId::with_formula(Scheme::A4, F::dia(F::conj(p, F::dia(p))))),
                  std::invalid_argument);
}

TEST_CASE("valid_axiom agrees with bruteforce for every scheme") {
  std::mt19937_64 rng(51);
  std::vector<SchemeId> ids;
  for (std::size_t n = 1; n <= 3; ++n)
    for (Scheme s : {Scheme::Trans, Scheme::wTrans, Scheme::ALobPlus, Scheme::ATPlus, Scheme::ABPlus, Scheme::Sigma,
                     Scheme::DiaPlus, Scheme::BoxPlus})
      ids.push_back(SchemeId::numbered(s, n));
  for (std::size_t n = 1; n <= 2; ++n) ids.push_back(SchemeId::numbered(Scheme::A3Plus, n));
  ids.push_back(SchemeId::numbered(Scheme::GLn, 2));
  ids.push_back(SchemeId::numbered(Scheme::GLn, 3));
  ids.push_back(SchemeId::numbered(Scheme::GL2Variant, 1));
  ids.push_back(SchemeId::numbered(Scheme::L2, 1));
  for (const F& g : {F::dia_n(2, p), F::dia_n(3, p), F::dia_n(2, F::conj(p, F::dia(p))),
                     F::conj(F::dia_n(2, p), F::dia_n(3, p))}) {
    ids.push_back(SchemeId::with_formula(Scheme::A4, g));
    ids.push_back(SchemeId::with_formula(Scheme::Aw4, g));
  }
  for (const F& b : {F::dia(p), F::dia_n(2, p), F::dia(F::conj(p, F::dia(p)))})
    ids.push_back(SchemeId::with_formula(Scheme::ALob, b));

  for (int rep = 0; rep < 120; ++rep) {
    const std::size_t n = 1 + rng() % 4;
    const Frame f = oracle::to_frame(oracle::random_rel(n, 0.2 + 0.1 * static_cast<double>(rep % 4), rng));
    for (const auto& id : ids) {
      const F inst = scheme(id);
      if (n * variables(inst).size() > 12) continue;
      INFO(describe(id));
      CHECK(valid_axiom(f, id) == oracle::valid(f, inst));
    }
  }
}

TEST_CASE("catalog: names, degrees and json") {
  CHECK(catalog::resolve("K4").pretrans_degree == 1);
  CHECK(catalog::resolve("wK4").pretrans_degree == 2);
  CHECK(catalog::resolve("GL").requires_cwf);
  CHECK(catalog::resolve("K4_1_4").pretrans_degree == 3);
  CHECK(catalog::resolve("wK4_1_4").pretrans_degree == 4);
  CHECK(catalog::resolve("GL_3").pretrans_degree == 2);
  CHECK(catalog::resolve("K4_sigma_2").pretrans_degree == 2);
  CHECK(catalog::resolve("wK4_sigma_2").pretrans_degree == 3);
  CHECK(catalog::resolve("GL_sigma_2").pretrans_degree == 2);
  CHECK(catalog::resolve("Trans_3").pretrans_degree == 3);
  CHECK(catalog::resolve("wTrans_3").pretrans_degree == 4);
  CHECK(catalog::resolve("K4[<><><>p0]").pretrans_degree == 2);
  CHECK(catalog::resolve("S4[<><>p0]").axioms.size() == 2);
  CHECK(catalog::resolve("S5[<><>p0]").axioms.size() == 3);
  CHECK_THROWS_AS(catalog::resolve("K5"), std::invalid_argument);
  CHECK_THROWS_AS(catalog::resolve("K4_1_1"), std::invalid_argument);
  CHECK_THROWS_AS(catalog::resolve("K4[<>p0]"), std::invalid_argument);
  for (const auto& [name, desc] : catalog::entries()) CHECK_FALSE(desc.empty());
  for (const char* name : {"K4", "wK4_sigma_3", "GL_sigma_1", "S4.3[<><>p0]", "L2", "GL2var"}) {
    const LogicSpec s = catalog::resolve(name);
    const LogicSpec t = logic_from_json(nlohmann::json::parse(to_json(s).dump()));
    CHECK(t.name == s.name);
    CHECK(t.axioms == s.axioms);
    CHECK(t.pretrans_degree == s.pretrans_degree);
    CHECK(t.requires_cwf == s.requires_cwf);
  }
}

TEST_CASE("lambda frame examples") {
  const Frame chain = Frame::from_edges(3, {{0, 1}, {1, 2}});
  CHECK(is_lambda_frame(chain, catalog::k4_sigma(2)));
  CHECK_FALSE(is_lambda_frame(Frame::from_edges(1, {{0, 0}}), catalog::gl_sigma(1)));
  CHECK(is_lambda_frame(cycle(3), catalog::k4_1(4)));
  CHECK_FALSE(is_lambda_frame(cycle(3), catalog::k4_1(3)));
}

TEST_CASE("logics are pretransitive of their degree") {
  // Every frame of the logic is n-transitive for the recorded degree n.
  const std::vector<LogicSpec> logics = {catalog::k4(),         catalog::wk4(),         catalog::gl(),
                                         catalog::k4_1(3),      catalog::wk4_1(3),      catalog::gl_n(3),
                                         catalog::k4_sigma(2),  catalog::wk4_sigma(2),  catalog::gl_sigma(2),
                                         catalog::trans_n(2),   catalog::wtrans_n(2),   catalog::l2(),
                                         catalog::gl2_variant()};
  std::mt19937_64 rng(61);
  for (int rep = 0; rep < 3000; ++rep) {
    const std::size_t n = 1 + rng() % 5;
    const Frame f = oracle::to_frame(oracle::random_rel(n, 0.3, rng));
    for (const auto& l : logics)
      if (is_lambda_frame(f, l)) CHECK_MESSAGE(is_n_transitive(f, l.pretrans_degree), l.name);
  }
}
