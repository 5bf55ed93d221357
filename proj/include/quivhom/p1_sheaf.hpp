#pragma once

#include <cstddef>
#include <vector>

#include "quivhom/field.hpp"
#include "quivhom/matrix.hpp"
#include "quivhom/quiver.hpp"

namespace quivhom {

/// O(d_1) (+) ... (+) O(d_r) on P^1, twists kept sorted non-increasing.
class SplitBundle {
public:
  SplitBundle() = default;
  /// Sorts the twists; use tensor() when the pre-sort order matters.
  explicit SplitBundle(std::vector<int> twists);

  std::size_t rank() const { return twists_.size(); }
  const std::vector<int>& twists() const { return twists_; }
  int operator[](std::size_t k) const { return twists_.at(k); }

  bool operator==(const SplitBundle&) const = default;

private:
  std::vector<int> twists_;
};

/// Homogeneous binary form of degree d; coeffs[k] multiplies x^{d-k} y^k.
/// A negative degree is the zero form of a Hom with no sections.
struct BinForm {
  int degree = -1;
  std::vector<Scalar> coeffs;

  static BinForm zero(const Field& field, int degree);
  static BinForm monomial(const Field& field, int degree, int y_exponent, const Scalar& c);
  bool is_zero() const;
  bool operator==(const BinForm&) const = default;
};

BinForm multiply(const Field& field, const BinForm& f, const BinForm& g);

/// Matrix of forms from `source` to `target`; entry (i, j) has degree
/// target[i] - source[j].
class FormMatrix {
public:
  FormMatrix() = default;
  FormMatrix(Field field, SplitBundle source, SplitBundle target);
  FormMatrix(Field field, SplitBundle source, SplitBundle target,
             std::vector<std::vector<BinForm>> entries);

  const Field& field() const { return field_; }
  const SplitBundle& source() const { return source_; }
  const SplitBundle& target() const { return target_; }
  int degree(std::size_t i, std::size_t j) const { return target_[i] - source_[j]; }
  const BinForm& entry(std::size_t i, std::size_t j) const { return entries_.at(i).at(j); }
  void set(std::size_t i, std::size_t j, BinForm f);

  FormMatrix scaled(const Scalar& s) const;
  bool operator==(const FormMatrix&) const = default;

private:
  Field field_;
  SplitBundle source_;
  SplitBundle target_;
  std::vector<std::vector<BinForm>> entries_;
};

/// g o f.
FormMatrix compose(const FormMatrix& g, const FormMatrix& f);

/// E (x) F with twists e_i + f_j. Before sorting the summand (i, j) sits at
/// i * rank(F) + j (E most significant); sorted_position[i * rank(F) + j] is
/// where it lands in `bundle` (stable sort).
struct TensorBundle {
  SplitBundle bundle;
  std::vector<std::size_t> sorted_position;
};

TensorBundle tensor(const SplitBundle& E, const SplitBundle& F);

/// 1_M (x) f : M (x) E -> M (x) F in the sorted bases of both tensors.
FormMatrix tensor_with_identity(const SplitBundle& M, const FormMatrix& f);

/// An M-twisted Q-sheaf on P^1 with split bundles. phi[a] maps tensor(M[a], V[ta])
/// (sorted) to V[ha].
class QSheafP1 {
public:
  QSheafP1(Quiver quiver, Field field, std::vector<SplitBundle> M, std::vector<SplitBundle> V,
           std::vector<FormMatrix> phi);

  static QSheafP1 zero_maps(Quiver quiver, Field field, std::vector<SplitBundle> M,
                            std::vector<SplitBundle> V);

  const Quiver& quiver() const { return quiver_; }
  const Field& field() const { return field_; }
  const std::vector<SplitBundle>& twists() const { return M_; }
  const SplitBundle& M(ArrowIndex a) const { return M_.at(a); }
  const SplitBundle& V(Vertex i) const { return V_.at(i); }
  const std::vector<SplitBundle>& bundles() const { return V_; }
  const FormMatrix& phi(ArrowIndex a) const { return phi_.at(a); }
  const TensorBundle& arrow_source(ArrowIndex a) const { return sources_.at(a); }

  /// The same sheaf with every phi scaled by s.
  QSheafP1 scaled(const Scalar& s) const;
  /// Adds t to every twist of every V_i (M unchanged).
  QSheafP1 shifted(int t) const;

private:
  Quiver quiver_;
  Field field_;
  std::vector<SplitBundle> M_;
  std::vector<SplitBundle> V_;
  std::vector<FormMatrix> phi_;
  std::vector<TensorBundle> sources_;
};

/// Throws IncompatibleInstances unless V and W share quiver, field and M.
void require_compatible(const QSheafP1& V, const QSheafP1& W);

struct HomExtDims {
  std::size_t hom = 0;
  std::size_t ext1 = 0;
  bool operator==(const HomExtDims&) const = default;
};

/// (dim Hom(E, F), dim Ext^1(E, F)) on P^1.
HomExtDims sheaf_hom_ext_dims(const SplitBundle& E, const SplitBundle& F);

inline std::size_t h0_line(int d) { return d >= 0 ? static_cast<std::size_t>(d + 1) : 0; }
inline std::size_t h1_line(int d) { return d <= -2 ? static_cast<std::size_t>(-d - 1) : 0; }

/// A Laurent monomial c * x^{d-q} y^q sitting in line-bundle summand `entry`.
struct LaurentTerm {
  std::size_t entry;
  long q;
  Scalar coeff;
};

/// The sheaf map delta : C^0 -> C^1 between
///   C^0 = (+)_i Hom(V_i, W_i),  C^1 = (+)_a Hom(M_a (x) V_ta, W_ha)
/// written on line-bundle summands. Summands are ordered by vertex (resp.
/// arrow), then column-major over the Hom matrix entries, so summand
/// (r, c) of a block with R rows is at block offset c * R + r.
class HomComplex {
public:
  HomComplex(const QSheafP1& V, const QSheafP1& W);

  const std::vector<int>& c0_degrees() const { return c0_; }
  const std::vector<int>& c1_degrees() const { return c1_; }

  /// delta applied to the monomial y^q (times the matching power of x) in
  /// summand `entry` of C^0; unprojected, duplicates possible.
  std::vector<LaurentTerm> apply(std::size_t entry, long q) const;

private:
  struct Entry {
    Vertex vertex;
    std::size_t row;
    std::size_t col;
  };
  QSheafP1 V_;
  QSheafP1 W_;
  std::vector<int> c0_;
  std::vector<int> c1_;
  std::vector<Entry> c0_entries_;
  std::vector<std::size_t> c1_offset_;
};

/// delta on global sections: (+)_i H^0(Hom(V_i, W_i)) -> (+)_a H^0(Hom(M_a (x) V_ta, W_ha)).
/// Coordinates follow the HomComplex summand order; within a summand O(d)
/// the monomials x^{d-q} y^q are ordered by q = 0..d.
ExactMatrix delta0_matrix(const QSheafP1& V, const QSheafP1& W);

/// delta on H^1 classes. Within O(d) the classes x^{d-q} y^q have both
/// exponents negative, q = d+1..-1; products leaving that range are coboundaries.
ExactMatrix delta1_matrix(const QSheafP1& V, const QSheafP1& W);

/// Reads a kernel vector of delta0_matrix back as one FormMatrix per vertex.
std::vector<FormMatrix> unflatten_sections(const QSheafP1& V, const QSheafP1& W,
                                           const ColumnVector& v);

/// f_ha o phi_a == psi_a o (1 (x) f_ta) for every arrow, by explicit form arithmetic.
bool is_sheaf_morphism(const QSheafP1& V, const QSheafP1& W, const std::vector<FormMatrix>& f);

struct ExtReport {
  std::size_t ext0 = 0, ext1 = 0, ext2 = 0;
  std::size_t h0_F = 0, h0_G = 0, h1_F = 0, h1_G = 0;
  std::size_t rank_delta0 = 0, rank_delta1 = 0;
};

/// Ext^p from the long exact sequence
///   0 -> Hom -> (+)Hom -> (+)Hom -> Ext^1 -> (+)Ext^1 -> (+)Ext^1 -> Ext^2 -> 0
/// (Ext^2 between vector bundles on a curve vanishes, so it stops there).
ExtReport ext_quiver_sheaf(const QSheafP1& V, const QSheafP1& W);

struct HyperDims {
  std::size_t hh0 = 0, hh1 = 0, hh2 = 0;
  bool operator==(const HyperDims&) const = default;
};

/// Hypercohomology of C^0 -> C^1 from the Cech total complex on the cover
/// U0 = {x != 0}, U1 = {y != 0}, keeping y-exponents in [-T, T] with
/// T = max |d| + 2 + extra_margin over the summands O(d) of C^0 and C^1.
HyperDims cech_hyper(const QSheafP1& V, const QSheafP1& W, std::size_t extra_margin = 0);

/// chi(E, F) = sum over summand pairs of (f - e + 1).
long euler_pair(const SplitBundle& E, const SplitBundle& F);
/// ext0 - ext1 + ext2.
long euler_characteristic(const ExtReport& r);
/// sum_i chi(V_i, W_i) - sum_a chi(M_a (x) V_ta, W_ha).
long euler_expected(const QSheafP1& V, const QSheafP1& W);
bool euler_check(const QSheafP1& V, const QSheafP1& W);

} // namespace quivhom
