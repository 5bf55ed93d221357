#pragma once

#include <cstddef>

#include "quivhom/matrix.hpp"
#include "quivhom/twisted_rep.hpp"

namespace quivhom {

/// The representation H = Hom(N (x) e_i A, L) with N = k^n, L = k^l.
///
/// H_j = Hom(N (x) e_i A e_j, L) where e_i A e_j is spanned by the tensor
/// bases of the paths j -> i. A coordinate of H_j is an entry (r, col) of an
/// l x (n * |P_j|) matrix, col = nn * |P_j| + x, stored at col * l + r.
/// Arrows act by precomposition: (m . h)(n (x) x) = h(n (x) x x_a).
TwistedRep coinduced_rep(const TwistedRep& V, Vertex i, std::size_t n_dim, std::size_t l_dim);

struct AdjunctionMaps {
  TwistedRep target;
  /// Hom(N (x) V_i, L) -> (+)_j Hom(V_j, H_j), g |-> (f_j(v)(n (x) x) = g(n (x) x v)).
  /// Domain: l x (n * dim V_i) matrices vectorized column-major, columns
  /// indexed by nn * dim V_i + s. Codomain: the HomLayout(V, H) vertex side.
  ExactMatrix forward;
  /// f |-> (g(n (x) v) = f_i(v)(n (x) e_i)), the reverse direction.
  ExactMatrix backward;
  /// Basis of Hom_A(V, H) in the same flattened coordinates, one column each.
  ExactMatrix hom_basis;
  std::size_t lhs_dim = 0;
  std::size_t rhs_dim = 0;
};

/// Both directions of Hom_A(V, Hom(N (x) e_i A, L)) = Hom(N (x) V_i, L).
/// Throws std::invalid_argument if the quiver has a directed cycle.
AdjunctionMaps adjunction_iso(const TwistedRep& V, Vertex i, std::size_t n_dim,
                              std::size_t l_dim);

struct AdjunctionCheck {
  bool dims_agree = false;
  bool forward_lands_in_hom = false;
  bool backward_after_forward_is_identity = false;
  bool forward_after_backward_is_identity = false;

  bool all() const {
    return dims_agree && forward_lands_in_hom && backward_after_forward_is_identity &&
           forward_after_backward_is_identity;
  }
};

AdjunctionCheck check_adjunction(const TwistedRep& V, const AdjunctionMaps& maps);

} // namespace quivhom
