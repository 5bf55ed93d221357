#include "quivhom/p1_sheaf.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

#include "quivhom/errors.hpp"

namespace quivhom {

SplitBundle::SplitBundle(std::vector<int> twists) : twists_(std::move(twists)) {
  std::stable_sort(twists_.begin(), twists_.end(), std::greater<>());
}

BinForm BinForm::zero(const Field& field, int degree) {
  BinForm f;
  f.degree = degree;
  if (degree >= 0)
    f.coeffs.assign(static_cast<std::size_t>(degree) + 1, field.zero());
  return f;
}

BinForm BinForm::monomial(const Field& field, int degree, int y_exponent, const Scalar& c) {
  if (y_exponent < 0 || y_exponent > degree)
    throw std::out_of_range("monomial y^" + std::to_string(y_exponent) + " not of degree " +
                            std::to_string(degree));
  BinForm f = zero(field, degree);
  f.coeffs[static_cast<std::size_t>(y_exponent)] = field.normalize(c);
  return f;
}

bool BinForm::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Scalar& c) { return sgn(c) == 0; });
}

BinForm multiply(const Field& field, const BinForm& f, const BinForm& g) {
  BinForm out = BinForm::zero(field, f.degree + g.degree);
  if (f.degree < 0 || g.degree < 0)
    return out;
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    if (sgn(f.coeffs[i]) == 0)
      continue;
    for (std::size_t j = 0; j < g.coeffs.size(); ++j)
      if (sgn(g.coeffs[j]) != 0)
        out.coeffs[i + j] = field.add(out.coeffs[i + j], field.mul(f.coeffs[i], g.coeffs[j]));
  }
  return out;
}

FormMatrix::FormMatrix(Field field, SplitBundle source, SplitBundle target)
    : field_(field), source_(std::move(source)), target_(std::move(target)) {
  entries_.resize(target_.rank());
  for (std::size_t i = 0; i < target_.rank(); ++i)
    for (std::size_t j = 0; j < source_.rank(); ++j)
      entries_[i].push_back(BinForm::zero(field_, degree(i, j)));
}

FormMatrix::FormMatrix(Field field, SplitBundle source, SplitBundle target,
                       std::vector<std::vector<BinForm>> entries)
    : FormMatrix(field, std::move(source), std::move(target)) {
  if (entries.size() != target_.rank())
    throw DimensionMismatch("form matrix needs " + std::to_string(target_.rank()) + " rows");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].size() != source_.rank())
      throw DimensionMismatch("form matrix row " + std::to_string(i) + " needs " +
                              std::to_string(source_.rank()) + " entries");
    for (std::size_t j = 0; j < entries[i].size(); ++j)
      set(i, j, std::move(entries[i][j]));
  }
}

void FormMatrix::set(std::size_t i, std::size_t j, BinForm f) {
  const int d = degree(i, j);
  const std::size_t want = d >= 0 ? static_cast<std::size_t>(d) + 1 : 0;
  if (f.coeffs.size() != want)
    throw DimensionMismatch("entry (" + std::to_string(i) + ", " + std::to_string(j) +
                            ") must be a form of degree " + std::to_string(d) + " with " +
                            std::to_string(want) + " coefficients");
  f.degree = d;
  for (auto& c : f.coeffs)
    c = field_.normalize(c);
  entries_.at(i).at(j) = std::move(f);
}

FormMatrix FormMatrix::scaled(const Scalar& s) const {
  FormMatrix out = *this;
  for (auto& row : out.entries_)
    for (auto& f : row)
      for (auto& c : f.coeffs)
        c = field_.mul(c, s);
  return out;
}

FormMatrix compose(const FormMatrix& g, const FormMatrix& f) {
  if (!(g.source() == f.target()))
    throw DimensionMismatch("composing form matrices with mismatched bundles");
  if (!(g.field() == f.field()))
    throw DimensionMismatch("composing form matrices over different fields");
  const Field& field = g.field();
  FormMatrix out(field, f.source(), g.target());
  for (std::size_t i = 0; i < g.target().rank(); ++i)
    for (std::size_t j = 0; j < f.source().rank(); ++j) {
      BinForm acc = BinForm::zero(field, out.degree(i, j));
      if (acc.degree < 0)
        continue;
      for (std::size_t k = 0; k < f.target().rank(); ++k) {
        BinForm term = multiply(field, g.entry(i, k), f.entry(k, j));
        for (std::size_t c = 0; c < acc.coeffs.size(); ++c)
          acc.coeffs[c] = field.add(acc.coeffs[c], term.coeffs[c]);
      }
      out.set(i, j, std::move(acc));
    }
  return out;
}

TensorBundle tensor(const SplitBundle& E, const SplitBundle& F) {
  std::vector<int> raw;
  for (int e : E.twists())
    for (int f : F.twists())
      raw.push_back(e + f);
  std::vector<std::size_t> order(raw.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return raw[a] > raw[b]; });
  TensorBundle t;
  t.sorted_position.resize(raw.size());
  for (std::size_t k = 0; k < order.size(); ++k)
    t.sorted_position[order[k]] = k;
  t.bundle = SplitBundle(std::move(raw));
  return t;
}

FormMatrix tensor_with_identity(const SplitBundle& M, const FormMatrix& f) {
  const TensorBundle src = tensor(M, f.source());
  const TensorBundle dst = tensor(M, f.target());
  FormMatrix out(f.field(), src.bundle, dst.bundle);
  const std::size_t nE = f.source().rank(), nF = f.target().rank();
  for (std::size_t m = 0; m < M.rank(); ++m)
    for (std::size_t r = 0; r < nF; ++r)
      for (std::size_t c = 0; c < nE; ++c)
        out.set(dst.sorted_position[m * nF + r], src.sorted_position[m * nE + c], f.entry(r, c));
  return out;
}

QSheafP1::QSheafP1(Quiver quiver, Field field, std::vector<SplitBundle> M,
                   std::vector<SplitBundle> V, std::vector<FormMatrix> phi)
    : quiver_(std::move(quiver)), field_(field), M_(std::move(M)), V_(std::move(V)),
      phi_(std::move(phi)) {
  if (M_.size() != quiver_.arrow_count())
    throw DimensionMismatch("need one twisting bundle per arrow");
  if (V_.size() != quiver_.vertex_count())
    throw DimensionMismatch("need one bundle per vertex");
  if (phi_.size() != quiver_.arrow_count())
    throw DimensionMismatch("need one form matrix per arrow");
  for (ArrowIndex a = 0; a < quiver_.arrow_count(); ++a) {
    sources_.push_back(tensor(M_[a], V_[quiver_.tail(a)]));
    const FormMatrix& p = phi_[a];
    if (!(p.field() == field_))
      throw DimensionMismatch("map of arrow " + std::to_string(a) + " is over the wrong field");
    if (!(p.source() == sources_[a].bundle) || !(p.target() == V_[quiver_.head(a)]))
      throw DimensionMismatch("map of arrow " + std::to_string(a) +
                              " must go from M_a (x) V_ta to V_ha");
  }
}

QSheafP1 QSheafP1::zero_maps(Quiver quiver, Field field, std::vector<SplitBundle> M,
                             std::vector<SplitBundle> V) {
  std::vector<FormMatrix> phi;
  for (ArrowIndex a = 0; a < quiver.arrow_count(); ++a)
    phi.emplace_back(field, tensor(M.at(a), V.at(quiver.tail(a))).bundle, V.at(quiver.head(a)));
  return QSheafP1(std::move(quiver), field, std::move(M), std::move(V), std::move(phi));
}

QSheafP1 QSheafP1::scaled(const Scalar& s) const {
  std::vector<FormMatrix> phi;
  for (const auto& p : phi_)
    phi.push_back(p.scaled(s));
  return QSheafP1(quiver_, field_, M_, V_, std::move(phi));
}

QSheafP1 QSheafP1::shifted(int t) const {
  std::vector<SplitBundle> V;
  for (const auto& b : V_) {
    std::vector<int> tw = b.twists();
    for (auto& d : tw)
      d += t;
    V.emplace_back(std::move(tw));
  }
  std::vector<FormMatrix> phi;
  for (ArrowIndex a = 0; a < quiver_.arrow_count(); ++a) {
    // Shifting both ends keeps every entry degree, and the sort order of the
    // tensor is unchanged.
    FormMatrix p(field_, tensor(M_[a], V[quiver_.tail(a)]).bundle, V[quiver_.head(a)]);
    for (std::size_t i = 0; i < p.target().rank(); ++i)
      for (std::size_t j = 0; j < p.source().rank(); ++j)
        p.set(i, j, phi_[a].entry(i, j));
    phi.push_back(std::move(p));
  }
  return QSheafP1(quiver_, field_, M_, std::move(V), std::move(phi));
}

void require_compatible(const QSheafP1& V, const QSheafP1& W) {
  if (!(V.quiver() == W.quiver()))
    throw IncompatibleInstances("sheaves are over different quivers");
  if (!(V.field() == W.field()))
    throw IncompatibleInstances("sheaves are over different fields");
  if (!(V.twists() == W.twists()))
    throw IncompatibleInstances("sheaves use different twisting bundles");
}

HomExtDims sheaf_hom_ext_dims(const SplitBundle& E, const SplitBundle& F) {
  HomExtDims d;
  for (int f : F.twists())
    for (int e : E.twists()) {
      d.hom += h0_line(f - e);
      d.ext1 += h1_line(f - e);
    }
  return d;
}

HomComplex::HomComplex(const QSheafP1& V, const QSheafP1& W) : V_(V), W_(W) {
  require_compatible(V, W);
  const Quiver& q = V.quiver();
  for (Vertex i = 0; i < q.vertex_count(); ++i)
    for (std::size_t c = 0; c < V.V(i).rank(); ++c)
      for (std::size_t r = 0; r < W.V(i).rank(); ++r) {
        c0_.push_back(W.V(i)[r] - V.V(i)[c]);
        c0_entries_.push_back({i, r, c});
      }
  for (ArrowIndex a = 0; a < q.arrow_count(); ++a) {
    c1_offset_.push_back(c1_.size());
    const SplitBundle& src = V.arrow_source(a).bundle;
    const SplitBundle& dst = W.V(q.head(a));
    for (std::size_t c = 0; c < src.rank(); ++c)
      for (std::size_t r = 0; r < dst.rank(); ++r)
        c1_.push_back(dst[r] - src[c]);
  }
}

std::vector<LaurentTerm> HomComplex::apply(std::size_t entry, long q) const {
  const Entry& e = c0_entries_.at(entry);
  const Quiver& quiver = V_.quiver();
  const Field& field = V_.field();
  std::vector<LaurentTerm> out;
  for (ArrowIndex a = 0; a < quiver.arrow_count(); ++a) {
    const Vertex h = quiver.head(a), t = quiver.tail(a);
    const std::size_t R = W_.V(h).rank();
    if (h == e.vertex) {
      // (E_rc y^q) o phi_a: row r picks up row c of phi_a.
      const FormMatrix& phi = V_.phi(a);
      for (std::size_t cp = 0; cp < phi.source().rank(); ++cp) {
        const BinForm& f = phi.entry(e.col, cp);
        for (std::size_t k = 0; k < f.coeffs.size(); ++k)
          if (sgn(f.coeffs[k]) != 0)
            out.push_back({c1_offset_[a] + cp * R + e.row, q + static_cast<long>(k), f.coeffs[k]});
      }
    }
    if (t == e.vertex) {
      // -psi_a o (1 (x) E_rc y^q): summand (m, c) of M_a (x) V_t goes to
      // summand (m, r) of M_a (x) W_t, then through psi_a.
      const FormMatrix& psi = W_.phi(a);
      const TensorBundle& tv = V_.arrow_source(a);
      const TensorBundle& tw = W_.arrow_source(a);
      const std::size_t nv = V_.V(t).rank(), nw = W_.V(t).rank();
      for (std::size_t m = 0; m < V_.M(a).rank(); ++m) {
        const std::size_t cp = tv.sorted_position[m * nv + e.col];
        const std::size_t rw = tw.sorted_position[m * nw + e.row];
        for (std::size_t s = 0; s < R; ++s) {
          const BinForm& f = psi.entry(s, rw);
          for (std::size_t k = 0; k < f.coeffs.size(); ++k)
            if (sgn(f.coeffs[k]) != 0)
              out.push_back(
                  {c1_offset_[a] + cp * R + s, q + static_cast<long>(k), field.neg(f.coeffs[k])});
        }
      }
    }
  }
  return out;
}

namespace {

// Slots of the cohomology basis of each summand: H^0 has q in [0, d], H^1
// has q in [d+1, -1].
struct Slots {
  std::vector<std::size_t> offset;
  std::vector<long> lo;
  std::vector<long> hi;
  std::size_t total = 0;

  Slots(const std::vector<int>& degrees, int h) {
    for (int d : degrees) {
      offset.push_back(total);
      const long a = h == 0 ? 0 : d + 1;
      const long b = h == 0 ? d : -1;
      lo.push_back(a);
      hi.push_back(b);
      if (b >= a)
        total += static_cast<std::size_t>(b - a + 1);
    }
  }
};

ExactMatrix delta_on_cohomology(const QSheafP1& V, const QSheafP1& W, int h) {
  HomComplex cx(V, W);
  const Slots dom(cx.c0_degrees(), h);
  const Slots cod(cx.c1_degrees(), h);
  ExactMatrix D(V.field(), cod.total, dom.total);
  for (std::size_t e = 0; e < cx.c0_degrees().size(); ++e)
    for (long q = dom.lo[e]; q <= dom.hi[e]; ++q) {
      const std::size_t col = dom.offset[e] + static_cast<std::size_t>(q - dom.lo[e]);
      for (const auto& term : cx.apply(e, q)) {
        if (term.q < cod.lo[term.entry] || term.q > cod.hi[term.entry]) {
          if (h == 0)
            throw std::logic_error("global section left H^0 under delta");
          continue; // coboundary
        }
        D.add_to(cod.offset[term.entry] + static_cast<std::size_t>(term.q - cod.lo[term.entry]),
                 col, term.coeff);
      }
    }
  return D;
}

} // namespace

ExactMatrix delta0_matrix(const QSheafP1& V, const QSheafP1& W) {
  return delta_on_cohomology(V, W, 0);
}

ExactMatrix delta1_matrix(const QSheafP1& V, const QSheafP1& W) {
  return delta_on_cohomology(V, W, 1);
}

std::vector<FormMatrix> unflatten_sections(const QSheafP1& V, const QSheafP1& W,
                                           const ColumnVector& v) {
  require_compatible(V, W);
  std::vector<FormMatrix> out;
  std::size_t pos = 0;
  for (Vertex i = 0; i < V.quiver().vertex_count(); ++i) {
    FormMatrix f(V.field(), V.V(i), W.V(i));
    for (std::size_t c = 0; c < V.V(i).rank(); ++c)
      for (std::size_t r = 0; r < W.V(i).rank(); ++r) {
        BinForm b = BinForm::zero(V.field(), f.degree(r, c));
        for (auto& coeff : b.coeffs)
          coeff = v.at(pos++, 0);
        f.set(r, c, std::move(b));
      }
    out.push_back(std::move(f));
  }
  if (pos != v.rows())
    throw DimensionMismatch("section vector has the wrong length");
  return out;
}

bool is_sheaf_morphism(const QSheafP1& V, const QSheafP1& W, const std::vector<FormMatrix>& f) {
  require_compatible(V, W);
  const Quiver& q = V.quiver();
  for (ArrowIndex a = 0; a < q.arrow_count(); ++a) {
    FormMatrix lhs = compose(f.at(q.head(a)), V.phi(a));
    FormMatrix rhs = compose(W.phi(a), tensor_with_identity(V.M(a), f.at(q.tail(a))));
    if (!(lhs == rhs))
      return false;
  }
  return true;
}

ExtReport ext_quiver_sheaf(const QSheafP1& V, const QSheafP1& W) {
  ExactMatrix D0 = delta0_matrix(V, W);
  ExactMatrix D1 = delta1_matrix(V, W);
  ExtReport r;
  r.h0_F = D0.cols();
  r.h0_G = D0.rows();
  r.h1_F = D1.cols();
  r.h1_G = D1.rows();
  r.rank_delta0 = rank(D0);
  r.rank_delta1 = rank(D1);
  r.ext0 = r.h0_F - r.rank_delta0;
  r.ext1 = (r.h0_G - r.rank_delta0) + (r.h1_F - r.rank_delta1);
  r.ext2 = r.h1_G - r.rank_delta1;
  return r;
}

long euler_pair(const SplitBundle& E, const SplitBundle& F) {
  long chi = 0;
  for (int e : E.twists())
    for (int f : F.twists())
      chi += f - e + 1;
  return chi;
}

long euler_characteristic(const ExtReport& r) {
  return static_cast<long>(r.ext0) - static_cast<long>(r.ext1) + static_cast<long>(r.ext2);
}

long euler_expected(const QSheafP1& V, const QSheafP1& W) {
  require_compatible(V, W);
  const Quiver& q = V.quiver();
  long chi = 0;
  for (Vertex i = 0; i < q.vertex_count(); ++i)
    chi += euler_pair(V.V(i), W.V(i));
  for (ArrowIndex a = 0; a < q.arrow_count(); ++a)
    chi -= euler_pair(V.arrow_source(a).bundle, W.V(q.head(a)));
  return chi;
}

bool euler_check(const QSheafP1& V, const QSheafP1& W) {
  return euler_characteristic(ext_quiver_sheaf(V, W)) == euler_expected(V, W);
}

} // namespace quivhom
