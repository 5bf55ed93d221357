#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "quivhom/twisted_rep.hpp"

using namespace quivhom;

namespace {

const Field Q = Field::rationals();
const Field F101 = Field::prime(101);
const Quiver loop(1, {{0, 0}});
const Quiver triple(2, {{1, 0}}); // 0 <- 1

TwistedRep jordan_rep(const Field& f, std::size_t n) {
  ExactMatrix J(f, n, n);
  for (std::size_t i = 0; i + 1 < n; ++i)
    J.set(i, i + 1, f.one());
  return TwistedRep(loop, TwistData::untwisted(loop), f, {n}, {J});
}

TwistedRep rep(const Quiver& q, const Field& f, std::vector<std::size_t> dims,
               std::vector<std::vector<std::vector<long long>>> phi) {
  std::vector<ExactMatrix> maps;
  for (std::size_t a = 0; a < phi.size(); ++a) {
    if (phi[a].empty())
      maps.emplace_back(f, dims[q.head(a)], dims[q.tail(a)]);
    else
      maps.push_back(ExactMatrix::from_ints(f, phi[a]));
  }
  return TwistedRep(q, TwistData::untwisted(q), f, dims, maps);
}

} // namespace

TEST_CASE("shape validation") {
  CHECK_THROWS_AS(TwistedRep(loop, TwistData::untwisted(loop), Q, {2}, {ExactMatrix(Q, 2, 3)}),
                  DimensionMismatch);
  CHECK_THROWS_AS(TwistedRep(loop, TwistData{{0}}, Q, {1}, {ExactMatrix(Q, 1, 0)}),
                  DimensionMismatch);
  CHECK_NOTHROW(TwistedRep(loop, TwistData{{2}}, Q, {2}, {ExactMatrix(Q, 2, 4)}));
}

TEST_CASE("tensor index splitting puts the last arrow first") {
  Quiver q(1, {{0, 0}, {0, 0}});
  TwistData t{{2, 3}};
  // p = a1 * a0: M_p = M_a1 (x) M_a0 with sizes 3 and 2.
  Path p = Path::from_arrows(q, {0, 1});
  CHECK(path_basis_size(t, p) == 6);
  CHECK(split_tensor_index(t, p, 0) == std::vector<std::size_t>{0, 0});
  CHECK(split_tensor_index(t, p, 1) == std::vector<std::size_t>{1, 0});
  CHECK(split_tensor_index(t, p, 2) == std::vector<std::size_t>{0, 1});
  CHECK(split_tensor_index(t, p, 5) == std::vector<std::size_t>{1, 2});
  CHECK_THROWS(split_tensor_index(t, p, 6));
}

TEST_CASE("act_path examples") {
  TwistedRep J2 = jordan_rep(Q, 2);
  auto v = ExactMatrix::column_from_ints(Q, {3, 5});
  CHECK(act_path(J2, Path::trivial(0), 0, 0, v) == v);
  CHECK(act_path(J2, Path::from_arrows(loop, {0}), 0, 0, v) ==
        ExactMatrix::column_from_ints(Q, {5, 0}));
  CHECK(act_path(J2, Path::from_arrows(loop, {0, 0}), 0, 0, v).is_zero());
  CHECK(act_path(J2, Path::from_arrows(loop, {0}), 0, 0, ExactMatrix(Q, 2, 1)).is_zero());
  CHECK_THROWS(act_path(J2, Path::from_arrows(loop, {0}), 1, 0, v));

  TwistedRep T = rep(triple, Q, {1, 1}, {{{1}}});
  auto one = ExactMatrix::column_from_ints(Q, {1});
  // e_0 applied to a vector of V_1 is zero.
  CHECK(act_path(T, Path::trivial(0), 0, 1, one).is_zero());
  CHECK(act_path(T, Path::from_arrows(triple, {0}), 0, 1, one) == one);
}

TEST_CASE("act_path on a twisted loop uses the matching blocks") {
  // phi = [A_0 | A_1] on M (x) V with dim M = 2.
  auto A = ExactMatrix::from_ints(Q, {{1, 2, 0, 1}, {0, 1, 1, 0}});
  TwistedRep V(loop, TwistData{{2}}, Q, {2}, {A});
  auto v = ExactMatrix::column_from_ints(Q, {1, 1});
  Path p = Path::from_arrows(loop, {0, 0});
  for (std::size_t m = 0; m < 4; ++m) {
    const std::size_t first = m % 2, last = m / 2;
    CHECK(act_path(V, p, m, 0, v) == V.phi_component(0, last) * (V.phi_component(0, first) * v));
  }
}

TEST_CASE("delta_matrix examples") {
  TwistedRep Z = TwistedRep::zero_maps(triple, TwistData::untwisted(triple), Q, {2, 1});
  CHECK(delta_matrix(Z, Z).is_zero());

  TwistedRep S = rep(loop, Q, {1}, {{{0}}});
  auto D = delta_matrix(S, S);
  CHECK(D.rows() == 1);
  CHECK(D.cols() == 1);
  CHECK(D.is_zero());

  TwistedRep L = rep(loop, Q, {1}, {{{7}}});
  CHECK(delta_matrix(L, L).is_zero());
}

TEST_CASE("delta_matrix rejects incompatible pairs") {
  TwistedRep a = rep(loop, Q, {1}, {{{0}}});
  TwistedRep b = rep(loop, F101, {1}, {{{0}}});
  TwistedRep c = rep(triple, Q, {1, 1}, {{{0}}});
  CHECK_THROWS_AS(delta_matrix(a, b), IncompatibleInstances);
  CHECK_THROWS_AS(delta_matrix(a, c), IncompatibleInstances);
}

TEST_CASE("hom_space examples") {
  TwistedRep J3 = jordan_rep(Q, 3);
  auto H = hom_space(J3, J3);
  CHECK(H.size() == 3);
  std::vector<ColumnVector> cols;
  for (const auto& f : H)
    cols.push_back(flatten(J3, J3, f));
  auto id = flatten(J3, J3, RepMorphism::identity(J3));
  CHECK(solve(columns_to_matrix(Q, id.rows(), cols), id).has_value());

  TwistedRep V = rep(triple, Q, {1, 1}, {{{1}}});
  TwistedRep W = rep(triple, Q, {1, 1}, {{{0}}});
  auto H2 = hom_space(V, W);
  REQUIRE(H2.size() == 1);
  CHECK(H2[0].f[0].is_zero());
  CHECK_FALSE(H2[0].f[1].is_zero());
}

TEST_CASE("ext1_dim examples") {
  TwistedRep V = rep(triple, Q, {0, 1}, {{}});
  TwistedRep W = rep(triple, Q, {1, 0}, {{}});
  CHECK(ext1_dim(V, W) == 1);
  CHECK(hom_space(V, W).empty());

  TwistedRep S = rep(loop, Q, {1}, {{{0}}});
  CHECK(ext1_dim(S, S) == 1);

  TwistedRep Z = TwistedRep::zero_maps(triple, TwistData::untwisted(triple), Q, {0, 0});
  CHECK(ext1_dim(V, Z) == 0);
}

TEST_CASE("extension realization examples") {
  TwistedRep V = rep(triple, Q, {0, 1}, {{}});
  TwistedRep W = rep(triple, Q, {1, 0}, {{}});
  auto zero_eta = arrow_blocks(V, W, ExactMatrix(Q, delta_matrix(V, W).rows(), 1));
  CHECK(is_split_extension(build_extension(V, W, zero_eta), V, W));

  TwistedRep E = build_extension(V, W, {ExactMatrix::from_ints(Q, {{1}})});
  CHECK(E.dims() == std::vector<std::size_t>{1, 1});
  CHECK(E.phi(0) == ExactMatrix::from_ints(Q, {{1}}));
  CHECK_FALSE(is_split_extension(E, V, W));

  TwistedRep S = rep(loop, Q, {1}, {{{0}}});
  TwistedRep E2 = build_extension(S, S, {ExactMatrix::from_ints(Q, {{1}})});
  CHECK(E2.phi(0) == ExactMatrix::from_ints(Q, {{0, 1}, {0, 0}}));
  CHECK_FALSE(is_split_extension(E2, S, S));
  CHECK_THROWS_AS(build_extension(S, S, {ExactMatrix(Q, 2, 1)}), DimensionMismatch);
}

TEST_CASE("Jordan blocks: Hom and Ext^1 have dimension min(m, n)") {
  for (std::size_t m = 1; m <= 4; ++m)
    for (std::size_t n = 1; n <= 4; ++n) {
      TwistedRep A = jordan_rep(F101, m), B = jordan_rep(F101, n);
      const std::size_t direct =
          m * n - oracle::rank_mod_p(oracle::commutator_map(oracle::jordan(m), oracle::jordan(n)),
                                     101);
      CHECK(direct == std::min(m, n));
      CHECK(hom_space(A, B).size() == direct);
      CHECK(ext1_dim(A, B) == direct);
    }
}

TEST_CASE("random representations: Hom/Ext^1 properties") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const Field& f = trial % 3 == 0 ? Q : F101;
    Quiver q = oracle::random_quiver(rng, 3, 4);
    TwistData t;
    for (std::size_t a = 0; a < q.arrow_count(); ++a)
      t.dims.push_back(1 + rng() % 2);
    TwistedRep V = oracle::random_rep(q, t, f, 3, rng);
    TwistedRep W = oracle::random_rep(q, t, f, 3, rng);

    auto H = hom_space(V, W);
    for (const auto& h : H)
      CHECK(is_morphism(V, W, h));

    long expect = static_cast<long>(H.size());
    for (Vertex i = 0; i < q.vertex_count(); ++i)
      expect -= static_cast<long>(V.dim(i) * W.dim(i));
    for (ArrowIndex a = 0; a < q.arrow_count(); ++a)
      expect += static_cast<long>(t[a] * V.dim(q.tail(a)) * W.dim(q.head(a)));
    CHECK(static_cast<long>(ext1_dim(V, W)) == expect);

    // The twisted representation and its untwisted blow-up have the same Hom/Ext.
    TwistedRep V0 = oracle::untwist(V), W0 = oracle::untwist(W);
    CHECK(hom_space(V0, W0).size() == H.size());
    CHECK(ext1_dim(V0, W0) == ext1_dim(V, W));

    auto HV = hom_space(V, V);
    std::vector<ColumnVector> cols;
    for (const auto& h : HV)
      cols.push_back(flatten(V, V, h));
    auto id = flatten(V, V, RepMorphism::identity(V));
    if (V.total_dim() > 0)
      CHECK(solve(columns_to_matrix(f, id.rows(), cols), id).has_value());

    // Split iff eta lies in the image of delta.
    const ExactMatrix D = delta_matrix(V, W);
    for (int k = 0; k < 3; ++k) {
      ColumnVector eta = oracle::random_matrix(f, D.rows(), 1, rng, k == 0 ? 100 : 50);
      if (k == 1 && D.cols() > 0)
        eta = D * oracle::random_matrix(f, D.cols(), 1, rng, 0);
      TwistedRep E = build_extension(V, W, arrow_blocks(V, W, eta));
      CHECK(is_split_extension(E, V, W) == solve(D, eta).has_value());
    }
  }
}

TEST_CASE("Ext^1 representatives give non-split extensions") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    Quiver q = oracle::random_quiver(rng, 3, 3);
    TwistData t{std::vector<std::size_t>(q.arrow_count(), 1)};
    TwistedRep V = oracle::random_rep(q, t, F101, 2, rng);
    TwistedRep W = oracle::random_rep(q, t, F101, 2, rng);
    auto reps = ext1_representatives(V, W);
    CHECK(reps.size() == ext1_dim(V, W));
    for (const auto& c : reps) {
      TwistedRep E = build_extension(V, W, arrow_blocks(V, W, c));
      CHECK_FALSE(is_split_extension(E, V, W));
    }
  }
}
