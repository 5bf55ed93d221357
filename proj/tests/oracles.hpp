#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's elimination code.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "quivhom/field.hpp"
#include "quivhom/matrix.hpp"
#include "quivhom/quiver.hpp"
#include "quivhom/twisted_rep.hpp"

namespace oracle {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

inline std::int64_t pow_mod(std::int64_t b, std::int64_t e, std::int64_t p) {
  std::int64_t r = 1;
  b %= p;
  while (e > 0) {
    if (e & 1)
      r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

/// Textbook elimination mod p with Fermat inverses.
inline std::size_t rank_mod_p(IntMatrix m, std::int64_t p) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (auto& row : m)
    for (auto& x : row)
      x = ((x % p) + p) % p;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][c] == 0)
      ++piv;
    if (piv == rows)
      continue;
    std::swap(m[piv], m[rank]);
    const std::int64_t inv = pow_mod(m[rank][c], p - 2, p);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0)
        continue;
      const std::int64_t f = m[r][c] * inv % p;
      for (std::size_t k = 0; k < cols; ++k)
        m[r][k] = ((m[r][k] - f * m[rank][k]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

inline IntMatrix to_ints(const quivhom::ExactMatrix& m) {
  IntMatrix out(m.rows(), std::vector<std::int64_t>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      out[r][c] = m.at(r, c).get_num().get_si();
  return out;
}

inline std::size_t rank_mod_p(const quivhom::ExactMatrix& m) {
  return rank_mod_p(to_ints(m), m.field().modulus());
}

/// Jordan block J_n(0) with ones on the superdiagonal.
inline IntMatrix jordan(std::size_t n) {
  IntMatrix j(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i + 1 < n; ++i)
    j[i][i + 1] = 1;
  return j;
}

/// Matrix of X |-> B X - X A on n x m matrices X (A is m x m, B is n x n),
/// with X flattened row-major. Its kernel is Hom_{k[x]}(A, B).
inline IntMatrix commutator_map(const IntMatrix& A, const IntMatrix& B) {
  const std::size_t m = A.size(), n = B.size();
  IntMatrix out(n * m, std::vector<std::int64_t>(n * m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t row = i * m + j;
      for (std::size_t k = 0; k < n; ++k)
        out[row][k * m + j] += B[i][k]; // (B X)_{ij} = sum_k B_ik X_kj
      for (std::size_t k = 0; k < m; ++k)
        out[row][i * m + k] -= A[k][j]; // (X A)_{ij} = sum_k X_ik A_kj
    }
  return out;
}

/// Random matrix over the field with small integer entries.
inline quivhom::ExactMatrix random_matrix(const quivhom::Field& f, std::size_t rows,
                                          std::size_t cols, std::mt19937_64& rng,
                                          int zero_percent = 30) {
  quivhom::ExactMatrix m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      if (static_cast<int>(rng() % 100) < zero_percent)
        continue;
      const long long v = f.is_prime_field() ? static_cast<long long>(rng() % f.modulus())
                                             : static_cast<long long>(rng() % 11) - 5;
      m.set_int(r, c, v);
    }
  return m;
}

/// Random twisted representation over the given quiver.
inline quivhom::TwistedRep random_rep(const quivhom::Quiver& q, const quivhom::TwistData& t,
                                      const quivhom::Field& f, std::size_t max_dim,
                                      std::mt19937_64& rng) {
  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i < q.vertex_count(); ++i)
    dims.push_back(rng() % (max_dim + 1));
  std::vector<quivhom::ExactMatrix> phi;
  for (std::size_t a = 0; a < q.arrow_count(); ++a)
    phi.push_back(random_matrix(f, dims[q.head(a)], t[a] * dims[q.tail(a)], rng));
  return quivhom::TwistedRep(q, t, f, dims, phi);
}

inline quivhom::Quiver random_quiver(std::mt19937_64& rng, std::size_t max_vertices,
                                     std::size_t max_arrows, bool acyclic = false) {
  const std::size_t n = 1 + rng() % max_vertices;
  const std::size_t k = rng() % (max_arrows + 1);
  std::vector<quivhom::Arrow> arrows;
  for (std::size_t a = 0; a < k; ++a) {
    std::size_t t = rng() % n, h = rng() % n;
    if (acyclic) {
      if (n == 1)
        break;
      if (t == h)
        h = (t + 1) % n;
      if (t < h)
        std::swap(t, h); // arrows go from larger to smaller index
    }
    arrows.push_back({t, h});
  }
  return quivhom::Quiver(n, arrows);
}

/// The representation of the quiver in which each arrow a is replaced by
/// twist[a] parallel arrows, carrying the blocks of phi_a. Its Hom/Ext agree
/// with those of the twisted representation.
inline quivhom::TwistedRep untwist(const quivhom::TwistedRep& V) {
  const auto& q = V.quiver();
  std::vector<quivhom::Arrow> arrows;
  std::vector<quivhom::ExactMatrix> phi;
  for (std::size_t a = 0; a < q.arrow_count(); ++a)
    for (std::size_t m = 0; m < V.twist()[a]; ++m) {
      arrows.push_back(q.arrows()[a]);
      phi.push_back(V.phi_component(a, m));
    }
  quivhom::Quiver big(q.vertex_count(), arrows);
  return quivhom::TwistedRep(big, quivhom::TwistData::untwisted(big), V.field(), V.dims(), phi);
}

} // namespace oracle
