#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "quivhom/matrix.hpp"
#include "quivhom/quiver.hpp"
#include "quivhom/sparse.hpp"
#include "quivhom/twisted_rep.hpp"

namespace quivhom {

/// Basis of the graded pieces e_i A_l (paths of length l ending at i, each
/// contributing the tensor basis of M_p) for l <= max_degree.
///
/// Within e_i A_l the paths are in PathTable order and each path's tensor
/// basis is contiguous. Every path of positive length is a * q, and the table
/// records a and the position of q so the recursion over degrees is O(1).
class GradedPathBasis {
public:
  GradedPathBasis(const Quiver& q, const TwistData& twist, std::size_t max_degree);

  std::size_t max_degree() const { return max_degree_; }
  std::size_t dim(Vertex i, std::size_t l) const { return dims_.at(l).at(i); }
  const std::vector<Path>& paths(std::size_t l, Vertex i) const { return table_.paths(l, i); }

  /// Offset of the k-th path of group (l, i) inside e_i A_l.
  std::size_t path_offset(std::size_t l, Vertex i, std::size_t k) const {
    return offsets_.at(l).at(i).at(k);
  }
  /// For a path of positive length a * q: (a, position of q in its group).
  std::pair<ArrowIndex, std::size_t> split_last(std::size_t l, Vertex i, std::size_t k) const {
    return parents_.at(l).at(i).at(k);
  }
  std::size_t tensor_size(std::size_t l, Vertex i, std::size_t k) const {
    return sizes_.at(l).at(i).at(k);
  }

  /// Coordinate of (p, m_index) in e_{head p} A_{|p|}.
  std::size_t index(const Path& p, std::size_t m_index) const;

private:
  std::size_t max_degree_;
  PathTable table_;
  std::vector<std::vector<std::size_t>> dims_;
  std::vector<std::vector<std::vector<std::size_t>>> offsets_;
  std::vector<std::vector<std::vector<std::size_t>>> sizes_;
  std::vector<std::vector<std::vector<std::pair<ArrowIndex, std::size_t>>>> parents_;
  std::map<std::pair<Vertex, std::vector<ArrowIndex>>, std::pair<std::size_t, std::size_t>>
      lookup_;
};

/// Coordinates of the two truncated terms of the resolution
///   F = (+)_{l<=N} (+)_i Hom(e_i A_l, V_i)
///   G = (+)_{l<=N-1} (+)_a Hom(M_a (x) e_ta A_l, V_ha)
/// Both are ordered by degree first, then by vertex or arrow. Each block is
/// vectorized column-major; the columns of a G block run over (M_a index,
/// e_ta A_l index) with the M_a index most significant.
struct ResolutionLayout {
  Field field;
  std::size_t degree = 0;
  std::vector<std::vector<std::size_t>> f_offset; // [l][i]
  std::vector<std::vector<std::size_t>> g_offset; // [l][a]
  std::size_t f_total = 0;
  std::size_t g_total = 0;

  ResolutionLayout(const TwistedRep& V, const GradedPathBasis& basis);
};

/// alpha[i][l] : dims[i] x dim(e_i A_l).
struct VertexGradedMaps {
  std::vector<std::vector<ExactMatrix>> alpha;
};

/// beta[a][l] : dims[ha] x (twist[a] * dim(e_ta A_l)).
struct ArrowGradedMaps {
  std::vector<std::vector<ExactMatrix>> beta;
};

struct ResolutionMatrices {
  GradedPathBasis basis;
  ResolutionLayout layout;
  SparseMatrix epsilon; // (+)V_i -> F
  SparseMatrix d;       // F -> G
};

/// epsilon(v)(x) = x v and d(alpha)_a = alpha_ha o mu_a - phi_a o (1 (x) alpha_ta),
/// truncated to degree <= N on F and <= N-1 on G.
ResolutionMatrices resolution_matrices(const TwistedRep& V, std::size_t N);

struct ExactnessReport {
  bool eps_injective = false;
  bool ker_d_eq_im_eps = false;
  bool d_surjective = false;
  std::size_t rank_epsilon = 0;
  std::size_t rank_d = 0;
  std::size_t nullity_d = 0;
  std::size_t f_dim = 0;
  std::size_t g_dim = 0;

  bool all() const { return eps_injective && ker_d_eq_im_eps && d_surjective; }
};

/// Requires N >= 1.
ExactnessReport check_resolution_exactness(const TwistedRep& V, std::size_t N);
ExactnessReport check_resolution_exactness(const TwistedRep& V, const ResolutionMatrices& res);

/// Zero families with the right shapes.
VertexGradedMaps zero_vertex_maps(const TwistedRep& V, const GradedPathBasis& basis);
ArrowGradedMaps zero_arrow_maps(const TwistedRep& V, const GradedPathBasis& basis);

/// alpha with d(alpha) = beta, built degree by degree from alpha^0 = 0 via
/// alpha(x_a (x) x) = x_a alpha_ta(x) + beta_a(x_a (x) x). beta must cover
/// degrees 0..N-1; the result covers 0..N.
VertexGradedMaps lift_beta(const TwistedRep& V, const GradedPathBasis& basis,
                           const ArrowGradedMaps& beta);

ColumnVector flatten(const ResolutionLayout& layout, const VertexGradedMaps& alpha);
ColumnVector flatten(const ResolutionLayout& layout, const ArrowGradedMaps& beta);
ArrowGradedMaps unflatten_arrow_maps(const TwistedRep& V, const GradedPathBasis& basis,
                                     const ResolutionLayout& layout, const ColumnVector& v);

} // namespace quivhom
