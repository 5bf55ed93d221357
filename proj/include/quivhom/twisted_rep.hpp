#pragma once

#include <cstddef>
#include <vector>

#include "quivhom/field.hpp"
#include "quivhom/matrix.hpp"
#include "quivhom/quiver.hpp"

namespace quivhom {

/// dim M_a for every arrow. The untwisted path algebra is twist 1 everywhere.
struct TwistData {
  std::vector<std::size_t> dims;

  static TwistData untwisted(const Quiver& q) { return {std::vector<std::size_t>(q.arrow_count(), 1)}; }
  std::size_t operator[](ArrowIndex a) const { return dims.at(a); }
  bool operator==(const TwistData&) const = default;
};

/// Size of the tensor basis of M_p (1 for a trivial path).
std::size_t path_basis_size(const TwistData& twist, const Path& p);

/// Splits a tensor-basis index of M_p = M_{a_m} (x) ... (x) M_{a_0} into
/// per-factor indices, returned in traversal order (index for a_0 first).
/// The a_m factor is the most significant digit.
std::vector<std::size_t> split_tensor_index(const TwistData& twist, const Path& p,
                                            std::size_t m_index);

/// An M-twisted representation: V_i = k^{dims[i]} and for each arrow a a map
/// phi_a : M_a (x) V_ta -> V_ha, stored as a dims[ha] x (twist[a]*dims[ta])
/// matrix whose columns run over (M_a index, V_ta index), M_a most significant.
class TwistedRep {
public:
  TwistedRep(Quiver quiver, TwistData twist, Field field, std::vector<std::size_t> dims,
             std::vector<ExactMatrix> phi);

  /// All arrow maps zero.
  static TwistedRep zero_maps(Quiver quiver, TwistData twist, Field field,
                              std::vector<std::size_t> dims);

  const Quiver& quiver() const { return quiver_; }
  const TwistData& twist() const { return twist_; }
  const Field& field() const { return field_; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t dim(Vertex i) const { return dims_.at(i); }
  std::size_t total_dim() const;
  const ExactMatrix& phi(ArrowIndex a) const { return phi_.at(a); }
  const std::vector<ExactMatrix>& phis() const { return phi_; }

  /// The block of phi_a acting on M_a basis element m: a dims[ha] x dims[ta] matrix.
  ExactMatrix phi_component(ArrowIndex a, std::size_t m) const;

private:
  Quiver quiver_;
  TwistData twist_;
  Field field_;
  std::vector<std::size_t> dims_;
  std::vector<ExactMatrix> phi_;
};

/// Family f_i : V_i -> W_i, one dims_W[i] x dims_V[i] matrix per vertex.
struct RepMorphism {
  std::vector<ExactMatrix> f;

  static RepMorphism identity(const TwistedRep& V);
};

/// x_p . v for the tensor basis element m_index of M_p and v in V_source.
/// Returns the zero vector of V_{head(p)} when source != tail(p).
ColumnVector act_path(const TwistedRep& V, const Path& p, std::size_t m_index, Vertex source,
                      const ColumnVector& v);

/// Throws IncompatibleInstances unless V and W share quiver, twist and field.
void require_compatible(const TwistedRep& V, const TwistedRep& W);

/// Offsets of the vertex blocks of (+)_i Hom(V_i, W_i) and the arrow blocks of
/// (+)_a Hom(M_a (x) V_ta, W_ha). Each block is vectorized column-major.
struct HomLayout {
  std::vector<std::size_t> vertex_offset;
  std::vector<std::size_t> arrow_offset;
  std::size_t vertex_total = 0;
  std::size_t arrow_total = 0;

  HomLayout(const TwistedRep& V, const TwistedRep& W);
};

/// Matrix of (f_i) -> (f_ha phi_a - psi_a (1 (x) f_ta))_a.
ExactMatrix delta_matrix(const TwistedRep& V, const TwistedRep& W);

ColumnVector flatten(const TwistedRep& V, const TwistedRep& W, const RepMorphism& f);
RepMorphism unflatten_morphism(const TwistedRep& V, const TwistedRep& W, const ColumnVector& v);

bool is_morphism(const TwistedRep& V, const TwistedRep& W, const RepMorphism& f);

/// Basis of Hom(V, W): the kernel of delta_matrix, reshaped and re-verified.
std::vector<RepMorphism> hom_space(const TwistedRep& V, const TwistedRep& W);

/// dim Ext^1(V, W) = dim coker(delta_matrix).
std::size_t ext1_dim(const TwistedRep& V, const TwistedRep& W);

/// Standard basis vectors of the codomain of delta_matrix that complete its
/// image; their classes form a basis of Ext^1(V, W).
std::vector<ColumnVector> ext1_representatives(const TwistedRep& V, const TwistedRep& W);

/// Splits a codomain vector of delta_matrix into eta_a blocks.
std::vector<ExactMatrix> arrow_blocks(const TwistedRep& V, const TwistedRep& W,
                                      const ColumnVector& v);

/// E_i = W_i (+) V_i with phi^E_a = [[psi_a, eta_a], [0, phi_a]].
TwistedRep build_extension(const TwistedRep& V, const TwistedRep& W,
                           const std::vector<ExactMatrix>& eta);

/// Does 0 -> W -> E -> V -> 0 (as produced by build_extension) admit a
/// section V -> E?
bool is_split_extension(const TwistedRep& E, const TwistedRep& V, const TwistedRep& W);

} // namespace quivhom
