#include "quivhom/twisted_rep.hpp"

#include <string>

namespace quivhom {

std::size_t path_basis_size(const TwistData& twist, const Path& p) {
  std::size_t n = 1;
  for (ArrowIndex a : p.arrows())
    n *= twist[a];
  return n;
}

std::vector<std::size_t> split_tensor_index(const TwistData& twist, const Path& p,
                                            std::size_t m_index) {
  if (m_index >= path_basis_size(twist, p))
    throw std::out_of_range("tensor index " + std::to_string(m_index) + " out of range for path " +
                            p.to_string());
  std::vector<std::size_t> digits;
  digits.reserve(p.length());
  for (ArrowIndex a : p.arrows()) {
    digits.push_back(m_index % twist[a]);
    m_index /= twist[a];
  }
  return digits;
}

TwistedRep::TwistedRep(Quiver quiver, TwistData twist, Field field, std::vector<std::size_t> dims,
                       std::vector<ExactMatrix> phi)
    : quiver_(std::move(quiver)), twist_(std::move(twist)), field_(field), dims_(std::move(dims)),
      phi_(std::move(phi)) {
  if (twist_.dims.size() != quiver_.arrow_count())
    throw DimensionMismatch("twist data has " + std::to_string(twist_.dims.size()) +
                            " entries for " + std::to_string(quiver_.arrow_count()) + " arrows");
  for (std::size_t a = 0; a < twist_.dims.size(); ++a)
    if (twist_.dims[a] == 0)
      throw DimensionMismatch("twist dimension of arrow " + std::to_string(a) + " must be >= 1");
  if (dims_.size() != quiver_.vertex_count())
    throw DimensionMismatch("dimension vector has " + std::to_string(dims_.size()) +
                            " entries for " + std::to_string(quiver_.vertex_count()) + " vertices");
  if (phi_.size() != quiver_.arrow_count())
    throw DimensionMismatch("expected one map per arrow");
  for (ArrowIndex a = 0; a < phi_.size(); ++a) {
    const auto& m = phi_[a];
    std::size_t want_r = dims_[quiver_.head(a)];
    std::size_t want_c = twist_[a] * dims_[quiver_.tail(a)];
    if (!(m.field() == field_))
      throw DimensionMismatch("map of arrow " + std::to_string(a) + " is over the wrong field");
    if (m.rows() != want_r || m.cols() != want_c)
      throw DimensionMismatch("map of arrow " + std::to_string(a) + " is " +
                              std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                              ", expected " + std::to_string(want_r) + "x" +
                              std::to_string(want_c));
  }
}

TwistedRep TwistedRep::zero_maps(Quiver quiver, TwistData twist, Field field,
                                 std::vector<std::size_t> dims) {
  std::vector<ExactMatrix> phi;
  for (ArrowIndex a = 0; a < quiver.arrow_count(); ++a)
    phi.emplace_back(field, dims.at(quiver.head(a)), twist[a] * dims.at(quiver.tail(a)));
  return TwistedRep(std::move(quiver), std::move(twist), field, std::move(dims), std::move(phi));
}

std::size_t TwistedRep::total_dim() const {
  std::size_t n = 0;
  for (auto d : dims_)
    n += d;
  return n;
}

ExactMatrix TwistedRep::phi_component(ArrowIndex a, std::size_t m) const {
  std::size_t w = dims_[quiver_.tail(a)];
  return phi_.at(a).block(0, m * w, dims_[quiver_.head(a)], w);
}

RepMorphism RepMorphism::identity(const TwistedRep& V) {
  RepMorphism id;
  for (auto d : V.dims())
    id.f.push_back(ExactMatrix::identity(V.field(), d));
  return id;
}

ColumnVector act_path(const TwistedRep& V, const Path& p, std::size_t m_index, Vertex source,
                      const ColumnVector& v) {
  if (source >= V.quiver().vertex_count())
    throw std::out_of_range("vertex " + std::to_string(source) + " out of range");
  if (v.cols() != 1 || v.rows() != V.dim(source))
    throw DimensionMismatch("vector does not live in V_" + std::to_string(source));
  auto digits = split_tensor_index(V.twist(), p, m_index);
  if (source != p.tail())
    return ColumnVector(V.field(), V.dim(p.head()), 1);
  ColumnVector w = v;
  for (std::size_t k = 0; k < p.length(); ++k)
    w = V.phi_component(p.arrows()[k], digits[k]) * w;
  return w;
}

void require_compatible(const TwistedRep& V, const TwistedRep& W) {
  if (!(V.quiver() == W.quiver()))
    throw IncompatibleInstances("representations are over different quivers");
  if (!(V.twist() == W.twist()))
    throw IncompatibleInstances("representations use different twist data");
  if (!(V.field() == W.field()))
    throw IncompatibleInstances("representations are over different fields");
}

HomLayout::HomLayout(const TwistedRep& V, const TwistedRep& W) {
  const Quiver& q = V.quiver();
  for (Vertex i = 0; i < q.vertex_count(); ++i) {
    vertex_offset.push_back(vertex_total);
    vertex_total += W.dim(i) * V.dim(i);
  }
  for (ArrowIndex a = 0; a < q.arrow_count(); ++a) {
    arrow_offset.push_back(arrow_total);
    arrow_total += W.dim(q.head(a)) * V.twist()[a] * V.dim(q.tail(a));
  }
}

ExactMatrix delta_matrix(const TwistedRep& V, const TwistedRep& W) {
  require_compatible(V, W);
  const Quiver& q = V.quiver();
  const Field& field = V.field();
  HomLayout layout(V, W);
  ExactMatrix D(field, layout.arrow_total, layout.vertex_total);

  for (Vertex i = 0; i < q.vertex_count(); ++i) {
    const std::size_t dv = V.dim(i), dw = W.dim(i);
    for (std::size_t c = 0; c < dv; ++c)
      for (std::size_t r = 0; r < dw; ++r) {
        // Elementary map E_rc : V_i -> W_i.
        const std::size_t col = layout.vertex_offset[i] + c * dw + r;
        for (ArrowIndex a = 0; a < q.arrow_count(); ++a) {
          const Vertex h = q.head(a), t = q.tail(a);
          const std::size_t out_rows = W.dim(h);
          const std::size_t base = layout.arrow_offset[a];
          if (h == i) {
            // E_rc * phi_a: row r picks up row c of phi_a.
            const ExactMatrix& phi = V.phi(a);
            for (std::size_t k = 0; k < phi.cols(); ++k)
              if (!phi.is_zero_at(c, k))
                D.add_to(base + k * out_rows + r, col, phi.at(c, k));
          }
          if (t == i) {
            // -psi_a (1 (x) E_rc): column (m, c) is minus column (m, r) of psi_a.
            const ExactMatrix& psi = W.phi(a);
            for (std::size_t m = 0; m < V.twist()[a]; ++m)
              for (std::size_t s = 0; s < out_rows; ++s) {
                const std::size_t src_col = m * W.dim(t) + r;
                if (psi.is_zero_at(s, src_col))
                  continue;
                const std::size_t dst_col = m * V.dim(t) + c;
                D.add_to(base + dst_col * out_rows + s, col, field.neg(psi.at(s, src_col)));
              }
          }
        }
      }
  }
  return D;
}

ColumnVector flatten(const TwistedRep& V, const TwistedRep& W, const RepMorphism& f) {
  HomLayout layout(V, W);
  if (f.f.size() != V.quiver().vertex_count())
    throw DimensionMismatch("morphism needs one matrix per vertex");
  ColumnVector out(V.field(), layout.vertex_total, 1);
  for (Vertex i = 0; i < f.f.size(); ++i) {
    if (f.f[i].rows() != W.dim(i) || f.f[i].cols() != V.dim(i))
      throw DimensionMismatch("morphism component " + std::to_string(i) + " has the wrong shape");
    out.set_block(layout.vertex_offset[i], 0, f.f[i].vectorized());
  }
  return out;
}

RepMorphism unflatten_morphism(const TwistedRep& V, const TwistedRep& W, const ColumnVector& v) {
  HomLayout layout(V, W);
  RepMorphism f;
  for (Vertex i = 0; i < V.quiver().vertex_count(); ++i)
    f.f.push_back(ExactMatrix::unvectorize(v, W.dim(i), V.dim(i), layout.vertex_offset[i]));
  return f;
}

bool is_morphism(const TwistedRep& V, const TwistedRep& W, const RepMorphism& f) {
  require_compatible(V, W);
  const Quiver& q = V.quiver();
  for (ArrowIndex a = 0; a < q.arrow_count(); ++a) {
    const Vertex h = q.head(a), t = q.tail(a);
    ExactMatrix lifted = kron(ExactMatrix::identity(V.field(), V.twist()[a]), f.f.at(t));
    if (!(f.f.at(h) * V.phi(a) == W.phi(a) * lifted))
      return false;
  }
  return true;
}

std::vector<RepMorphism> hom_space(const TwistedRep& V, const TwistedRep& W) {
  std::vector<RepMorphism> basis;
  for (const auto& v : kernel_basis(delta_matrix(V, W))) {
    RepMorphism f = unflatten_morphism(V, W, v);
    if (!is_morphism(V, W, f))
      throw std::logic_error("kernel vector of the connecting map is not a morphism");
    basis.push_back(std::move(f));
  }
  return basis;
}

std::size_t ext1_dim(const TwistedRep& V, const TwistedRep& W) {
  return cokernel_dimension(delta_matrix(V, W));
}

std::vector<ColumnVector> ext1_representatives(const TwistedRep& V, const TwistedRep& W) {
  ExactMatrix D = delta_matrix(V, W);
  const std::size_t n = D.rows();
  const std::vector<ExactMatrix> parts{D, ExactMatrix::identity(V.field(), n)};
  ExactMatrix aug = ExactMatrix::hstack(parts);
  std::vector<ColumnVector> reps;
  for (std::size_t c : pivot_columns(aug))
    if (c >= D.cols()) {
      ColumnVector e(V.field(), n, 1);
      e.set(c - D.cols(), 0, V.field().one());
      reps.push_back(std::move(e));
    }
  return reps;
}

std::vector<ExactMatrix> arrow_blocks(const TwistedRep& V, const TwistedRep& W,
                                      const ColumnVector& v) {
  HomLayout layout(V, W);
  if (v.rows() != layout.arrow_total || v.cols() != 1)
    throw DimensionMismatch("vector does not match the arrow-side Hom space");
  const Quiver& q = V.quiver();
  std::vector<ExactMatrix> blocks;
  for (ArrowIndex a = 0; a < q.arrow_count(); ++a)
    blocks.push_back(ExactMatrix::unvectorize(v, W.dim(q.head(a)),
                                              V.twist()[a] * V.dim(q.tail(a)),
                                              layout.arrow_offset[a]));
  return blocks;
}

TwistedRep build_extension(const TwistedRep& V, const TwistedRep& W,
                           const std::vector<ExactMatrix>& eta) {
  require_compatible(V, W);
  const Quiver& q = V.quiver();
  const Field& field = V.field();
  if (eta.size() != q.arrow_count())
    throw DimensionMismatch("extension data needs one block per arrow");
  std::vector<std::size_t> dims;
  for (Vertex i = 0; i < q.vertex_count(); ++i)
    dims.push_back(W.dim(i) + V.dim(i));
  std::vector<ExactMatrix> phi;
  for (ArrowIndex a = 0; a < q.arrow_count(); ++a) {
    const Vertex h = q.head(a), t = q.tail(a);
    const std::size_t tw = V.twist()[a];
    const std::size_t wt = W.dim(t), vt = V.dim(t), wh = W.dim(h);
    if (eta[a].rows() != wh || eta[a].cols() != tw * vt)
      throw DimensionMismatch("extension block for arrow " + std::to_string(a) +
                              " has the wrong shape");
    ExactMatrix m(field, dims[h], tw * dims[t]);
    for (std::size_t mi = 0; mi < tw; ++mi) {
      // Columns of M_a (x) E_t are ordered (mi, [W_t part, V_t part]).
      const std::size_t base = mi * dims[t];
      m.set_block(0, base, W.phi(a).block(0, mi * wt, wh, wt));
      m.set_block(0, base + wt, eta[a].block(0, mi * vt, wh, vt));
      m.set_block(wh, base + wt, V.phi(a).block(0, mi * vt, V.dim(h), vt));
    }
    phi.push_back(std::move(m));
  }
  return TwistedRep(q, V.twist(), field, std::move(dims), std::move(phi));
}

bool is_split_extension(const TwistedRep& E, const TwistedRep& V, const TwistedRep& W) {
  require_compatible(V, W);
  require_compatible(V, E);
  const Quiver& q = V.quiver();
  const Field& field = V.field();
  for (Vertex i = 0; i < q.vertex_count(); ++i)
    if (E.dim(i) != W.dim(i) + V.dim(i))
      throw DimensionMismatch("E is not of the form W (+) V at vertex " + std::to_string(i));

  // Unknown: s = (s_i : V_i -> E_i). Equations: s intertwines, and the V-block
  // of every s_i is the identity.
  ExactMatrix D = delta_matrix(V, E);
  HomLayout layout(V, E);
  std::size_t section_rows = 0;
  for (Vertex i = 0; i < q.vertex_count(); ++i)
    section_rows += V.dim(i) * V.dim(i);
  ExactMatrix P(field, section_rows, layout.vertex_total);
  ColumnVector rhs(field, D.rows() + section_rows, 1);
  std::size_t row = 0;
  for (Vertex i = 0; i < q.vertex_count(); ++i) {
    const std::size_t de = E.dim(i), dw = W.dim(i);
    for (std::size_t c = 0; c < V.dim(i); ++c)
      for (std::size_t r = 0; r < V.dim(i); ++r) {
        P.set(row, layout.vertex_offset[i] + c * de + dw + r, field.one());
        if (r == c)
          rhs.set(D.rows() + row, 0, field.one());
        ++row;
      }
  }
  const std::vector<ExactMatrix> parts{D, P};
  ExactMatrix system = ExactMatrix::vstack(parts);
  return solve(system, rhs).has_value();
}

} // namespace quivhom
