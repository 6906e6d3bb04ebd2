#include <doctest.h>

#include <random>

#include "grids.hpp"
#include "oracle.hpp"
#include "pretrans/paths.hpp"

using namespace pretrans;
using F = Formula;

TEST_CASE("bounds examples") {
  const Bounds a = bounds(1, 1);
  CHECK(a.N == 1);
  CHECK(a.M == 1);
  CHECK(a.C_k4 == 3);
  CHECK(a.C_gl == 2);
  const Bounds b = bounds(2, 2);
  CHECK(b.N == 4);
  CHECK(b.M == 16);
  CHECK(b.C_k4 == 546);
  CHECK(b.C_gl == 34);
  const Bounds c = bounds(1, 3);
  CHECK(c.M == 3);
  CHECK(c.C_k4 == 13);
  CHECK(bounds(2, 1).C_k4 == 2 * (16 + 4 + 1));
  CHECK_THROWS_AS(bounds(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(bounds(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(bounds(20, 20), std::overflow_error);
}

TEST_CASE("find_reduction examples") {
  Model chain(Frame::from_edges(2, {{0, 1}}));
  CHECK_FALSE(find_reduction(chain, LabeledPath{{0, 1}, {F::top()}}).has_value());

  Model two(Frame::from_edges(2, {{0, 1}, {1, 0}}));
  const LabeledPath zig{{0, 1, 0, 1}, {F::top(), F::top(), F::top()}};
  const auto r = find_reduction(two, zig);
  REQUIRE(r.has_value());
  CHECK(*r == std::make_pair<std::size_t, std::size_t>(1, 0));

  Model loop(Frame::from_edges(2, {{0, 0}, {0, 1}}));
  const auto s = find_reduction(loop, LabeledPath{{0, 0}, {F::top()}});
  REQUIRE(s.has_value());
  CHECK(*s == std::make_pair<std::size_t, std::size_t>(0, 0));

  CHECK_THROWS_AS(find_reduction(chain, LabeledPath{{1, 0}, {F::top()}}), PreconditionError);
  CHECK_THROWS_AS(find_reduction(chain, LabeledPath{{0, 1}, {}}), PreconditionError);
  Model pm(Frame::from_edges(2, {{0, 1}}));
  CHECK_THROWS_AS(find_reduction(pm, LabeledPath{{0, 1}, {F::var("p0")}}), PreconditionError);
}

TEST_CASE("find_reduction matches an exhaustive pair scan") {
  std::mt19937_64 rng(71);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t n = 1 + rng() % 5;
    const Model m = oracle::random_model(oracle::to_frame(oracle::random_rel(n, 0.4, rng)), 1, rng);
    const std::vector<F> labels = {F::top(), F::var("p0"), F::dia(F::var("p0"))};
    const LabeledPath p = greedy_optimal_path(m, rng() % n, {labels[rng() % 3], labels[rng() % 3]}, 6);
    CHECK(is_optimal(m, p));
    std::optional<std::pair<std::size_t, std::size_t>> want;
    for (std::size_t k = 0; k < p.length() && !want; ++k)
      for (std::size_t k2 = 0; k2 <= k && !want; ++k2)
        if (m.frame.has_edge(p.worlds[k], p.worlds[k2]) && oracle::eval(m, p.labels[k])[p.worlds[k2]])
          want = std::make_pair(k, k2);
    CHECK(find_reduction(m, p) == want);
  }
}

TEST_CASE("optimality") {
  Model m(Frame::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}));
  CHECK(is_optimal(m, LabeledPath{{0, 2}, {F::top()}}));
  CHECK_FALSE(is_optimal(m, LabeledPath{{0, 1}, {F::top()}}));
  CHECK(optimal_successors(m, 0, F::top()).to_vector() == std::vector<World>{2});
}

TEST_CASE("path json round trip") {
  const LabeledPath p{{0, 1, 2}, {F::dia(F::var("p0")), F::top()}};
  const LabeledPath q = path_from_json(to_json(p));
  CHECK(q.worlds == p.worlds);
  CHECK(q.labels == p.labels);
  CHECK_THROWS(path_from_json(nlohmann::json::array({0, "p0"})));
}

TEST_CASE("zigzag link examples") {
  // Transitive frame: the chain 0 -> 1 -> 2 -> 3 closed under transitivity.
  const Frame t = Frame::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {0, 2}, {0, 3}, {1, 3}});
  const ZigzagLink l = find_zigzag_link(t, 1, {{0, 1}, {2, 3}});
  CHECK(l == ZigzagLink{0, 1, 0});

  // All lines identical inside one cluster.
  const Frame c = Frame::from_edges(2, {{0, 1}, {1, 0}, {0, 0}, {1, 1}});
  const std::vector<std::vector<World>> same(5, std::vector<World>{0, 1, 0});
  const ZigzagLink z = find_zigzag_link(c, 2, same);
  CHECK(z.i == 0);
  CHECK(z.i2 == 1);
  CHECK(serial::find_zigzag_link(c, 2, same) == z);

  CHECK_THROWS_AS(find_zigzag_link(t, 1, {{0, 1}}), PreconditionError);
  CHECK_THROWS_AS(find_zigzag_link(t, 1, {{2, 3}, {0, 1}}), PreconditionError);
  CHECK_THROWS_AS(find_zigzag_link(t, 1, {{0, 2, 3}, {0, 1, 2}}), PreconditionError);
  const Frame not_k4 = Frame::from_edges(3, {{0, 1}, {1, 2}});
  CHECK_THROWS_AS(find_zigzag_link(not_k4, 1, {{0, 1}, {1, 2}}), PreconditionError);
}

TEST_CASE("zigzag link agrees with the serial scan on random grids") {
  std::mt19937_64 rng(81);
  int checked = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + rep % 2;
    const auto f = grids::random_logic_frame(catalog::k4_sigma(n), 2 + rng() % 4, rng);
    if (!f) continue;
    const auto grid = grids::random_grid(*f, n, bounds(n, 1).N + 1 + rng() % 3, rng);
    if (!grid) continue;
    const ZigzagLink l = find_zigzag_link(*f, n, *grid);
    CHECK(serial::find_zigzag_link(*f, n, *grid) == l);
    CHECK(f->has_edge((*grid)[l.i][l.j], (*grid)[l.i2][l.j + 1]));
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("is_zigzag") {
  const Frame t = Frame::from_edges(3, {{0, 1}, {1, 2}, {0, 2}, {2, 2}});
  const std::vector<std::vector<World>> paths = {{0, 1}, {0, 1}, {1, 2}, {2, 2}};
  CHECK(is_zigzag(t, paths, Zigzag{{1, 2}, {1}}, 1));
  CHECK(is_zigzag(t, paths, Zigzag{{2, 3}, {1}}, 1));
  CHECK_FALSE(is_zigzag(t, paths, Zigzag{{2, 1}, {1}}, 1));
  CHECK_FALSE(is_zigzag(t, paths, Zigzag{{0, 1}, {1}}, 1));
  CHECK_FALSE(is_zigzag(t, paths, Zigzag{{1, 2}, {0}}, 1));
}

TEST_CASE("grid link over labeled lines") {
  // One reflexive cluster of two worlds; labels differ per line but repeat.
  Model m(Frame::from_edges(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
  m.set_value("p0", WorldSet::full(2));
  const std::vector<F> labels = {F::top(), F::var("p0")};
  std::vector<LabeledPath> lines;
  for (std::size_t i = 0; i < bounds(1, 2).M + 1; ++i) lines.push_back(LabeledPath{{i % 2, (i + 1) % 2}, {labels[i % 2]}});
  const ZigzagLink l = grid_link(m, 1, lines);
  CHECK(l.i < l.i2);
  CHECK(lines[l.i].labels == lines[l.i2].labels);
  CHECK(m.frame.has_edge(lines[l.i].worlds[l.j], lines[l.i2].worlds[l.j + 1]));
  CHECK_THROWS_AS(grid_link(m, 1, {lines[0], lines[1]}), PreconditionError);
}
