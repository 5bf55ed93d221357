#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "quivhom/quiver.hpp"

using namespace quivhom;

TEST_CASE("quiver validation") {
  CHECK_THROWS(Quiver(0, {}));
  CHECK_THROWS(Quiver(2, {{0, 2}}));
  Quiver q(2, {{1, 0}, {1, 0}});
  CHECK(q.arrow_count() == 2);
  CHECK(q.is_acyclic());
  CHECK_FALSE(Quiver(1, {{0, 0}}).is_acyclic());
  CHECK_FALSE(Quiver(2, {{0, 1}, {1, 0}}).is_acyclic());
}

TEST_CASE("loop quiver has one path per length") {
  Quiver loop(1, {{0, 0}});
  PathTable t = enumerate_paths(loop, 3);
  for (std::size_t l = 0; l <= 3; ++l) {
    REQUIRE(t.count(l, 0) == 1);
    CHECK(t.paths(l, 0)[0].length() == l);
  }
  CHECK(t.paths(3, 0)[0].to_string() == "a0*a0*a0");
  CHECK(t.paths(0, 0)[0].to_string() == "<0>");
}

TEST_CASE("single arrow quiver has no long paths") {
  Quiver q(2, {{1, 0}});
  PathTable t = enumerate_paths(q, 5);
  CHECK(t.count(0, 0) == 1);
  CHECK(t.count(0, 1) == 1);
  CHECK(t.count(1, 0) == 1);
  CHECK(t.count(1, 1) == 0);
  for (std::size_t l = 2; l <= 5; ++l)
    CHECK(t.count(l, 0) + t.count(l, 1) == 0);
}

TEST_CASE("two-cycle length-2 paths") {
  // a = arrow 0 : 0 -> 1, b = arrow 1 : 1 -> 0
  Quiver q(2, {{0, 1}, {1, 0}});
  PathTable t = enumerate_paths(q, 2);
  REQUIRE(t.count(2, 0) == 1);
  REQUIRE(t.count(2, 1) == 1);
  CHECK(t.paths(2, 0)[0].written_order() == std::vector<ArrowIndex>{1, 0}); // ba
  CHECK(t.paths(2, 1)[0].written_order() == std::vector<ArrowIndex>{0, 1}); // ab
}

TEST_CASE("composition examples") {
  Quiver q(2, {{1, 0}});
  const Path e0 = Path::trivial(0), e1 = Path::trivial(1);
  const Path a = Path::from_arrows(q, {0});
  CHECK(compose(e0, e0) == e0);
  CHECK_FALSE(compose(e0, e1));
  CHECK(compose(a, e1) == a);
  CHECK(compose(e0, a) == a);
  CHECK_FALSE(compose(a, a));
  CHECK_THROWS(Path::from_arrows(q, {0, 0}));
}

TEST_CASE("random quivers: associativity, counts, ordering") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    Quiver q = oracle::random_quiver(rng, 3, 4);
    PathTable t = enumerate_paths(q, 4);
    std::vector<Path> small;
    for (std::size_t l = 0; l <= 2; ++l)
      for (Vertex i = 0; i < q.vertex_count(); ++i)
        for (const auto& p : t.paths(l, i))
          small.push_back(p);
    for (const auto& p : small)
      for (const auto& r : small)
        for (const auto& s : small) {
          auto rs = compose(r, s);
          auto pr = compose(p, r);
          auto left = pr ? compose(*pr, s) : std::nullopt;
          auto right = rs ? compose(p, *rs) : std::nullopt;
          CHECK(left == right);
        }

    for (std::size_t l = 1; l <= 4; ++l)
      for (Vertex i = 0; i < q.vertex_count(); ++i) {
        std::size_t expect = 0;
        for (ArrowIndex a = 0; a < q.arrow_count(); ++a)
          if (q.head(a) == i)
            expect += t.count(l - 1, q.tail(a));
        CHECK(t.count(l, i) == expect);
        const auto& group = t.paths(l, i);
        for (std::size_t k = 0; k + 1 < group.size(); ++k)
          CHECK(group[k].written_order() < group[k + 1].written_order());
        for (const auto& p : group) {
          CHECK(p.head() == i);
          CHECK(p.length() == l);
        }
      }
  }
}

TEST_CASE("acyclic quivers stabilize") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    Quiver q = oracle::random_quiver(rng, 4, 5, true);
    REQUIRE(q.is_acyclic());
    PathTable t = enumerate_paths(q, q.vertex_count() + 2);
    for (std::size_t l = q.vertex_count(); l <= t.max_length(); ++l)
      for (Vertex i = 0; i < q.vertex_count(); ++i)
        CHECK(t.count(l, i) == 0);
  }
}
