#include "quivhom/resolution.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace quivhom {

namespace {
constexpr std::size_t kNoArrow = std::numeric_limits<std::size_t>::max();
}

GradedPathBasis::GradedPathBasis(const Quiver& q, const TwistData& twist, std::size_t max_degree)
    : max_degree_(max_degree), table_(q, max_degree) {
  const std::size_t n = q.vertex_count();
  dims_.assign(max_degree + 1, std::vector<std::size_t>(n, 0));
  offsets_.assign(max_degree + 1, std::vector<std::vector<std::size_t>>(n));
  sizes_.assign(max_degree + 1, std::vector<std::vector<std::size_t>>(n));
  parents_.assign(max_degree + 1,
                  std::vector<std::vector<std::pair<ArrowIndex, std::size_t>>>(n));
  for (Vertex i = 0; i < n; ++i) {
    dims_[0][i] = 1;
    offsets_[0][i] = {0};
    sizes_[0][i] = {1};
    parents_[0][i] = {{kNoArrow, 0}};
  }
  // Same traversal as PathTable: group (l, h) is the concatenation over arrows
  // a into h of {a * q : q in group (l-1, ta)}.
  for (std::size_t l = 1; l <= max_degree; ++l)
    for (ArrowIndex a = 0; a < q.arrow_count(); ++a) {
      const Vertex t = q.tail(a), h = q.head(a);
      for (std::size_t kq = 0; kq < sizes_[l - 1][t].size(); ++kq) {
        const std::size_t size = twist[a] * sizes_[l - 1][t][kq];
        offsets_[l][h].push_back(dims_[l][h]);
        sizes_[l][h].push_back(size);
        parents_[l][h].push_back({a, kq});
        dims_[l][h] += size;
      }
    }
  for (std::size_t l = 0; l <= max_degree; ++l)
    for (Vertex i = 0; i < n; ++i) {
      const auto& group = table_.paths(l, i);
      if (group.size() != sizes_[l][i].size())
        throw std::logic_error("path table and graded basis disagree");
      for (std::size_t k = 0; k < group.size(); ++k)
        lookup_[{group[k].tail(), group[k].arrows()}] = {l, k};
    }
}

std::size_t GradedPathBasis::index(const Path& p, std::size_t m_index) const {
  auto it = lookup_.find({p.tail(), p.arrows()});
  if (it == lookup_.end())
    throw std::out_of_range("path " + p.to_string() + " is not in the graded basis");
  auto [l, k] = it->second;
  if (m_index >= sizes_[l][p.head()][k])
    throw std::out_of_range("tensor index out of range for path " + p.to_string());
  return offsets_[l][p.head()][k] + m_index;
}

ResolutionLayout::ResolutionLayout(const TwistedRep& V, const GradedPathBasis& basis)
    : field(V.field()), degree(basis.max_degree()) {
  const Quiver& q = V.quiver();
  f_offset.assign(degree + 1, std::vector<std::size_t>(q.vertex_count()));
  for (std::size_t l = 0; l <= degree; ++l)
    for (Vertex i = 0; i < q.vertex_count(); ++i) {
      f_offset[l][i] = f_total;
      f_total += V.dim(i) * basis.dim(i, l);
    }
  g_offset.assign(degree, std::vector<std::size_t>(q.arrow_count()));
  for (std::size_t l = 0; l < degree; ++l)
    for (ArrowIndex a = 0; a < q.arrow_count(); ++a) {
      g_offset[l][a] = g_total;
      g_total += V.dim(q.head(a)) * V.twist()[a] * basis.dim(q.tail(a), l);
    }
}

namespace {

SparseMatrix build_epsilon(const TwistedRep& V, const GradedPathBasis& basis,
                           const ResolutionLayout& layout) {
  const Quiver& q = V.quiver();
  const Field& field = V.field();
  SparseMatrix eps(field, layout.f_total, V.total_dim());
  std::size_t col = 0;
  for (Vertex j = 0; j < q.vertex_count(); ++j)
    for (std::size_t s = 0; s < V.dim(j); ++s, ++col) {
      ColumnVector e(field, V.dim(j), 1);
      e.set(s, 0, field.one());
      for (std::size_t l = 0; l <= layout.degree; ++l)
        for (Vertex i = 0; i < q.vertex_count(); ++i) {
          const auto& group = basis.paths(l, i);
          for (std::size_t k = 0; k < group.size(); ++k) {
            if (group[k].tail() != j)
              continue;
            const std::size_t off = basis.path_offset(l, i, k);
            for (std::size_t u = 0; u < basis.tensor_size(l, i, k); ++u) {
              ColumnVector w = act_path(V, group[k], u, j, e);
              for (std::size_t r = 0; r < V.dim(i); ++r)
                if (!w.is_zero_at(r, 0))
                  eps.add_to(layout.f_offset[l][i] + (off + u) * V.dim(i) + r, col, w.at(r, 0));
            }
          }
        }
    }
  return eps;
}

SparseMatrix build_d(const TwistedRep& V, const GradedPathBasis& basis,
                     const ResolutionLayout& layout) {
  const Quiver& q = V.quiver();
  const Field& field = V.field();
  SparseMatrix d(field, layout.g_total, layout.f_total);
  const Scalar one = field.one();
  // Walk F's positive-degree basis: each (a * q, u) pairs with the G
  // coordinate (m, x) of arrow a one degree lower.
  for (std::size_t l = 1; l <= layout.degree; ++l)
    for (Vertex i = 0; i < q.vertex_count(); ++i)
      for (std::size_t k = 0; k < basis.paths(l, i).size(); ++k) {
        const auto [a, kq] = basis.split_last(l, i, k);
        const Vertex t = q.tail(a);
        const std::size_t qsize = basis.tensor_size(l - 1, t, kq);
        const std::size_t qoff = basis.path_offset(l - 1, t, kq);
        const std::size_t poff = basis.path_offset(l, i, k);
        const std::size_t dim_t = basis.dim(t, l - 1);
        const ExactMatrix& phi = V.phi(a);
        for (std::size_t u = 0; u < basis.tensor_size(l, i, k); ++u) {
          const std::size_t m = u / qsize;
          const std::size_t x = qoff + u % qsize;
          for (std::size_t r = 0; r < V.dim(i); ++r) {
            const std::size_t row = layout.g_offset[l - 1][a] + (m * dim_t + x) * V.dim(i) + r;
            d.add_to(row, layout.f_offset[l][i] + (poff + u) * V.dim(i) + r, one);
            for (std::size_t c = 0; c < V.dim(t); ++c) {
              const std::size_t pc = m * V.dim(t) + c;
              if (phi.is_zero_at(r, pc))
                continue;
              d.add_to(row, layout.f_offset[l - 1][t] + x * V.dim(t) + c,
                       field.neg(phi.at(r, pc)));
            }
          }
        }
      }
  return d;
}

} // namespace

ResolutionMatrices resolution_matrices(const TwistedRep& V, std::size_t N) {
  GradedPathBasis basis(V.quiver(), V.twist(), N);
  ResolutionLayout layout(V, basis);
  SparseMatrix eps = build_epsilon(V, basis, layout);
  SparseMatrix d = build_d(V, basis, layout);
  return {std::move(basis), std::move(layout), std::move(eps), std::move(d)};
}

ExactnessReport check_resolution_exactness(const TwistedRep& V, std::size_t N) {
  if (N < 1)
    throw std::invalid_argument("exactness check needs degree bound N >= 1");
  return check_resolution_exactness(V, resolution_matrices(V, N));
}

ExactnessReport check_resolution_exactness(const TwistedRep& V, const ResolutionMatrices& res) {
  ExactnessReport rep;
  const std::size_t n = V.total_dim();
  rep.f_dim = res.layout.f_total;
  rep.g_dim = res.layout.g_total;
  rep.rank_epsilon = rank(res.epsilon);
  rep.rank_d = rank(res.d);
  rep.nullity_d = rep.f_dim - rep.rank_d;
  rep.eps_injective = rep.rank_epsilon == n;
  const bool composite_zero = (res.d * res.epsilon.to_dense()).is_zero();
  rep.ker_d_eq_im_eps = composite_zero && rep.eps_injective && rep.nullity_d == n;
  rep.d_surjective = rep.rank_d == rep.g_dim;
  return rep;
}

VertexGradedMaps zero_vertex_maps(const TwistedRep& V, const GradedPathBasis& basis) {
  VertexGradedMaps out;
  for (Vertex i = 0; i < V.quiver().vertex_count(); ++i) {
    out.alpha.emplace_back();
    for (std::size_t l = 0; l <= basis.max_degree(); ++l)
      out.alpha[i].emplace_back(V.field(), V.dim(i), basis.dim(i, l));
  }
  return out;
}

ArrowGradedMaps zero_arrow_maps(const TwistedRep& V, const GradedPathBasis& basis) {
  const Quiver& q = V.quiver();
  ArrowGradedMaps out;
  for (ArrowIndex a = 0; a < q.arrow_count(); ++a) {
    out.beta.emplace_back();
    for (std::size_t l = 0; l < basis.max_degree(); ++l)
      out.beta[a].emplace_back(V.field(), V.dim(q.head(a)),
                               V.twist()[a] * basis.dim(q.tail(a), l));
  }
  return out;
}

VertexGradedMaps lift_beta(const TwistedRep& V, const GradedPathBasis& basis,
                           const ArrowGradedMaps& beta) {
  const Quiver& q = V.quiver();
  const Field& field = V.field();
  const std::size_t N = basis.max_degree();
  if (beta.beta.size() != q.arrow_count())
    throw DimensionMismatch("beta needs one family per arrow");
  for (ArrowIndex a = 0; a < q.arrow_count(); ++a) {
    if (beta.beta[a].size() != N)
      throw DimensionMismatch("beta family of arrow " + std::to_string(a) + " must cover degrees 0.." +
                              std::to_string(N) + "-1");
    for (std::size_t l = 0; l < N; ++l) {
      const ExactMatrix& b = beta.beta[a][l];
      if (b.rows() != V.dim(q.head(a)) || b.cols() != V.twist()[a] * basis.dim(q.tail(a), l))
        throw DimensionMismatch("beta block (" + std::to_string(a) + ", " + std::to_string(l) +
                                ") has the wrong shape");
    }
  }

  VertexGradedMaps out = zero_vertex_maps(V, basis);
  for (std::size_t l = 1; l <= N; ++l)
    for (Vertex i = 0; i < q.vertex_count(); ++i) {
      ExactMatrix& alpha = out.alpha[i][l];
      for (std::size_t k = 0; k < basis.paths(l, i).size(); ++k) {
        const auto [a, kq] = basis.split_last(l, i, k);
        const Vertex t = q.tail(a);
        const ExactMatrix& prev = out.alpha[t][l - 1];
        const ExactMatrix& phi = V.phi(a);
        const ExactMatrix& b = beta.beta[a][l - 1];
        const std::size_t qsize = basis.tensor_size(l - 1, t, kq);
        const std::size_t qoff = basis.path_offset(l - 1, t, kq);
        const std::size_t poff = basis.path_offset(l, i, k);
        const std::size_t dim_t = basis.dim(t, l - 1);
        for (std::size_t u = 0; u < basis.tensor_size(l, i, k); ++u) {
          const std::size_t m = u / qsize;
          const std::size_t x = qoff + u % qsize;
          for (std::size_t r = 0; r < V.dim(i); ++r) {
            Scalar acc = b.at(r, m * dim_t + x);
            for (std::size_t c = 0; c < V.dim(t); ++c) {
              const std::size_t pc = m * V.dim(t) + c;
              if (phi.is_zero_at(r, pc) || prev.is_zero_at(c, x))
                continue;
              acc = field.add(acc, field.mul(phi.at(r, pc), prev.at(c, x)));
            }
            alpha.set(r, poff + u, acc);
          }
        }
      }
    }
  return out;
}

ColumnVector flatten(const ResolutionLayout& layout, const VertexGradedMaps& alpha) {
  ColumnVector v(layout.field, layout.f_total, 1);
  for (std::size_t i = 0; i < alpha.alpha.size(); ++i)
    for (std::size_t l = 0; l <= layout.degree; ++l)
      v.set_block(layout.f_offset.at(l).at(i), 0, alpha.alpha[i].at(l).vectorized());
  return v;
}

ColumnVector flatten(const ResolutionLayout& layout, const ArrowGradedMaps& beta) {
  ColumnVector v(layout.field, layout.g_total, 1);
  for (std::size_t a = 0; a < beta.beta.size(); ++a)
    for (std::size_t l = 0; l < layout.degree; ++l)
      v.set_block(layout.g_offset.at(l).at(a), 0, beta.beta[a].at(l).vectorized());
  return v;
}

ArrowGradedMaps unflatten_arrow_maps(const TwistedRep& V, const GradedPathBasis& basis,
                                     const ResolutionLayout& layout, const ColumnVector& v) {
  if (v.rows() != layout.g_total || v.cols() != 1)
    throw DimensionMismatch("vector does not match the arrow-side resolution term");
  const Quiver& q = V.quiver();
  ArrowGradedMaps out;
  for (ArrowIndex a = 0; a < q.arrow_count(); ++a) {
    out.beta.emplace_back();
    for (std::size_t l = 0; l < layout.degree; ++l)
      out.beta[a].push_back(ExactMatrix::unvectorize(
          v, V.dim(q.head(a)), V.twist()[a] * basis.dim(q.tail(a), l), layout.g_offset[l][a]));
  }
  return out;
}

} // namespace quivhom
