#include "quivhom/adjunction.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace quivhom {

namespace {

// Paths j -> i for every j, each with the offset of its tensor basis inside P_j.
struct PathsInto {
  std::vector<std::vector<Path>> paths;          // [j]
  std::vector<std::vector<std::size_t>> offsets; // [j]
  std::vector<std::size_t> sizes;                // |P_j|
  std::map<std::vector<ArrowIndex>, std::size_t> nontrivial_offset;

  std::size_t offset_of(const Path& p) const {
    if (p.is_trivial())
      return 0; // <i> is the first path with tail i
    return nontrivial_offset.at(p.arrows());
  }
};

PathsInto paths_into(const TwistedRep& V, Vertex target) {
  const Quiver& q = V.quiver();
  const std::size_t n = q.vertex_count();
  PathTable table(q, n > 0 ? n - 1 : 0);
  PathsInto out;
  out.paths.resize(n);
  out.offsets.resize(n);
  out.sizes.assign(n, 0);
  for (std::size_t l = 0; l <= table.max_length(); ++l)
    for (const Path& p : table.paths(l, target)) {
      const Vertex j = p.tail();
      out.paths[j].push_back(p);
      out.offsets[j].push_back(out.sizes[j]);
      if (!p.is_trivial())
        out.nontrivial_offset[p.arrows()] = out.sizes[j];
      out.sizes[j] += path_basis_size(V.twist(), p);
    }
  return out;
}

void require_acyclic(const Quiver& q) {
  if (!q.is_acyclic())
    throw std::invalid_argument("adjunction needs an acyclic quiver (e_i A must be finite)");
}

} // namespace

TwistedRep coinduced_rep(const TwistedRep& V, Vertex i, std::size_t n_dim, std::size_t l_dim) {
  const Quiver& q = V.quiver();
  require_acyclic(q);
  if (i >= q.vertex_count())
    throw std::out_of_range("vertex " + std::to_string(i) + " out of range");
  const PathsInto P = paths_into(V, i);
  std::vector<std::size_t> dims;
  for (Vertex j = 0; j < q.vertex_count(); ++j)
    dims.push_back(l_dim * n_dim * P.sizes[j]);

  std::vector<ExactMatrix> phi;
  for (ArrowIndex a = 0; a < q.arrow_count(); ++a) {
    const Vertex t = q.tail(a), h = q.head(a);
    const std::size_t ta = V.twist()[a];
    ExactMatrix m(V.field(), dims[h], ta * dims[t]);
    // (m . h)(n (x) (p, u)) = h(n (x) (p a, u * t_a + m)).
    for (std::size_t k = 0; k < P.paths[h].size(); ++k) {
      const Path& p = P.paths[h][k];
      const Path pa = *compose(p, Path::from_arrows(q, {a}));
      const std::size_t pa_off = P.offset_of(pa);
      const std::size_t psize = path_basis_size(V.twist(), p);
      for (std::size_t u = 0; u < psize; ++u)
        for (std::size_t mi = 0; mi < ta; ++mi)
          for (std::size_t nn = 0; nn < n_dim; ++nn)
            for (std::size_t r = 0; r < l_dim; ++r) {
              const std::size_t row = (nn * P.sizes[h] + P.offsets[h][k] + u) * l_dim + r;
              const std::size_t src = (nn * P.sizes[t] + pa_off + u * ta + mi) * l_dim + r;
              m.set(row, mi * dims[t] + src, V.field().one());
            }
    }
    phi.push_back(std::move(m));
  }
  return TwistedRep(q, V.twist(), V.field(), std::move(dims), std::move(phi));
}

AdjunctionMaps adjunction_iso(const TwistedRep& V, Vertex i, std::size_t n_dim,
                              std::size_t l_dim) {
  if (n_dim == 0 || l_dim == 0)
    throw std::invalid_argument("adjunction needs positive dimensions for N and L");
  TwistedRep H = coinduced_rep(V, i, n_dim, l_dim);
  const Quiver& q = V.quiver();
  const Field& field = V.field();
  const PathsInto P = paths_into(V, i);
  HomLayout layout(V, H);
  const std::size_t dvi = V.dim(i);
  const std::size_t rhs = l_dim * n_dim * dvi;

  ExactMatrix forward(field, layout.vertex_total, rhs);
  for (Vertex j = 0; j < q.vertex_count(); ++j) {
    const std::size_t dh = H.dim(j);
    for (std::size_t e = 0; e < V.dim(j); ++e) {
      ColumnVector v(field, V.dim(j), 1);
      v.set(e, 0, field.one());
      for (std::size_t k = 0; k < P.paths[j].size(); ++k) {
        const Path& p = P.paths[j][k];
        for (std::size_t u = 0; u < path_basis_size(V.twist(), p); ++u) {
          ColumnVector xv = act_path(V, p, u, j, v);
          for (std::size_t s = 0; s < dvi; ++s) {
            if (xv.is_zero_at(s, 0))
              continue;
            const Scalar c = xv.at(s, 0);
            for (std::size_t nn = 0; nn < n_dim; ++nn)
              for (std::size_t r = 0; r < l_dim; ++r) {
                const std::size_t hrow = (nn * P.sizes[j] + P.offsets[j][k] + u) * l_dim + r;
                const std::size_t out = layout.vertex_offset[j] + e * dh + hrow;
                const std::size_t in = (nn * dvi + s) * l_dim + r;
                forward.add_to(out, in, c);
              }
          }
        }
      }
    }
  }

  ExactMatrix backward(field, rhs, layout.vertex_total);
  const std::size_t dh_i = H.dim(i);
  for (std::size_t s = 0; s < dvi; ++s)
    for (std::size_t nn = 0; nn < n_dim; ++nn)
      for (std::size_t r = 0; r < l_dim; ++r) {
        // The trivial path <i> sits at offset 0 of P_i.
        const std::size_t hrow = (nn * P.sizes[i] + 0) * l_dim + r;
        backward.set((nn * dvi + s) * l_dim + r, layout.vertex_offset[i] + s * dh_i + hrow,
                     field.one());
      }

  std::vector<ColumnVector> cols;
  for (const auto& f : hom_space(V, H))
    cols.push_back(flatten(V, H, f));
  ExactMatrix basis = columns_to_matrix(field, layout.vertex_total, cols);
  const std::size_t lhs = cols.size();
  return {std::move(H), std::move(forward), std::move(backward), std::move(basis), lhs, rhs};
}

AdjunctionCheck check_adjunction(const TwistedRep& V, const AdjunctionMaps& maps) {
  AdjunctionCheck c;
  c.dims_agree = maps.lhs_dim == maps.rhs_dim;
  c.forward_lands_in_hom = (delta_matrix(V, maps.target) * maps.forward).is_zero();
  c.backward_after_forward_is_identity =
      maps.backward * maps.forward == ExactMatrix::identity(V.field(), maps.rhs_dim);
  c.forward_after_backward_is_identity =
      maps.forward * (maps.backward * maps.hom_basis) == maps.hom_basis;
  return c;
}

} // namespace quivhom
