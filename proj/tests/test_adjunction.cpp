#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "quivhom/adjunction.hpp"

using namespace quivhom;

namespace {
const Field Q = Field::rationals();
const Field F101 = Field::prime(101);
} // namespace

TEST_CASE("adjunction on a single vertex is the identity") {
  Quiver q(1, {});
  TwistedRep V(q, TwistData::untwisted(q), Q, {2}, {});
  auto maps = adjunction_iso(V, 0, 1, 1);
  CHECK(maps.lhs_dim == 2);
  CHECK(maps.rhs_dim == 2);
  CHECK(maps.forward == ExactMatrix::identity(Q, 2));
  CHECK(maps.backward == ExactMatrix::identity(Q, 2));
  CHECK(check_adjunction(V, maps).all());
}

TEST_CASE("adjunction on the single arrow quiver") {
  Quiver q(2, {{1, 0}});
  TwistedRep V(q, TwistData::untwisted(q), Q, {1, 1}, {ExactMatrix::from_ints(Q, {{1}})});
  TwistedRep H = coinduced_rep(V, 0, 1, 1);
  // e_0 A has basis {e_0, a}: H_0 = Hom(k e_0, k), H_1 = Hom(k a, k).
  CHECK(H.dims() == std::vector<std::size_t>{1, 1});
  auto maps = adjunction_iso(V, 0, 1, 1);
  CHECK(maps.lhs_dim == 1);
  CHECK(maps.rhs_dim == 1);
  CHECK(check_adjunction(V, maps).all());
}

TEST_CASE("adjunction rejects cyclic quivers") {
  Quiver q(1, {{0, 0}});
  TwistedRep V(q, TwistData::untwisted(q), Q, {1}, {ExactMatrix(Q, 1, 1)});
  CHECK_THROWS_AS(adjunction_iso(V, 0, 1, 1), std::invalid_argument);
}

TEST_CASE("adjunction on random acyclic quivers") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    Quiver q = oracle::random_quiver(rng, 4, 4, true);
    TwistData t;
    for (std::size_t a = 0; a < q.arrow_count(); ++a)
      t.dims.push_back(1 + rng() % 2);
    const Field& f = trial % 3 == 0 ? Q : F101;
    TwistedRep V = oracle::random_rep(q, t, f, 2, rng);
    const Vertex i = rng() % q.vertex_count();
    const std::size_t n = 1 + rng() % 2, l = 1 + rng() % 2;
    auto maps = adjunction_iso(V, i, n, l);
    auto check = check_adjunction(V, maps);
    CHECK(check.dims_agree);
    CHECK(check.forward_lands_in_hom);
    CHECK(check.backward_after_forward_is_identity);
    CHECK(check.forward_after_backward_is_identity);
    CHECK(maps.rhs_dim == l * n * V.dim(i));
  }
}
