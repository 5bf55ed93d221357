#include <algorithm>
#include <cstdlib>

#include "quivhom/p1_sheaf.hpp"
#include "quivhom/sparse.hpp"

namespace quivhom {

namespace {

enum class Chart { u0, u1, u01 };

// Sections of the summands O(d) over one chart, as monomials x^{d-q} y^q with
// q clipped to the window [-T, T]:
//   U0 = {x != 0}: q >= 0;  U1 = {y != 0}: q <= d;  U01: any q.
struct ChartBlock {
  std::size_t base = 0;
  std::vector<std::size_t> offset;
  std::vector<long> lo, hi;
  std::size_t total = 0;

  ChartBlock(const std::vector<int>& degrees, Chart chart, long T, std::size_t base_)
      : base(base_) {
    for (int d : degrees) {
      long a = chart == Chart::u0 ? 0 : -T;
      long b = chart == Chart::u1 ? std::min<long>(d, T) : T;
      offset.push_back(total);
      lo.push_back(a);
      hi.push_back(b);
      if (b >= a)
        total += static_cast<std::size_t>(b - a + 1);
    }
  }

  bool contains(std::size_t e, long q) const { return q >= lo[e] && q <= hi[e]; }
  std::size_t at(std::size_t e, long q) const {
    return base + offset[e] + static_cast<std::size_t>(q - lo[e]);
  }
};

} // namespace

// Total complex of the Cech double complex of C^0 -> C^1:
//   T^0 = C^0(U0) + C^0(U1)
//   T^1 = C^0(U01) + C^1(U0) + C^1(U1)
//   T^2 = C^1(U01)
// with D0(s0, s1) = (s1 - s0, delta s0, delta s1) and
// D1(t, u0, u1) = delta t - (u1 - u0).
//
// delta never lowers q, so {q >= -T} is a subcomplex and {q > T} a
// subcomplex of that; the window is the quotient. Outside [-T, T] each piece
// is the cone of a restriction map that is an isomorphism (U0 -> U01 above
// the window, U1 -> U01 below it, valid once T >= max |d|), so the window
// has the same cohomology as the full complex.
HyperDims cech_hyper(const QSheafP1& V, const QSheafP1& W, std::size_t extra_margin) {
  HomComplex cx(V, W);
  const auto& deg0 = cx.c0_degrees();
  const auto& deg1 = cx.c1_degrees();
  long maxabs = 0;
  for (int d : deg0)
    maxabs = std::max<long>(maxabs, std::labs(d));
  for (int d : deg1)
    maxabs = std::max<long>(maxabs, std::labs(d));
  const long T = maxabs + 2 + static_cast<long>(extra_margin);

  const ChartBlock s0(deg0, Chart::u0, T, 0);
  const ChartBlock s1(deg0, Chart::u1, T, s0.total);
  const std::size_t t0 = s0.total + s1.total;

  const ChartBlock t01(deg0, Chart::u01, T, 0);
  const ChartBlock u0(deg1, Chart::u0, T, t01.total);
  const ChartBlock u1(deg1, Chart::u1, T, t01.total + u0.total);
  const std::size_t t1 = t01.total + u0.total + u1.total;

  const ChartBlock w01(deg1, Chart::u01, T, 0);
  const std::size_t t2 = w01.total;

  const Field& field = V.field();
  const Scalar one = field.one();
  const Scalar minus_one = field.neg(one);

  SparseMatrix D0(field, t1, t0);
  for (std::size_t e = 0; e < deg0.size(); ++e) {
    for (long q = s0.lo[e]; q <= s0.hi[e]; ++q) {
      const std::size_t col = s0.at(e, q);
      D0.add_to(t01.at(e, q), col, minus_one);
      for (const auto& term : cx.apply(e, q))
        if (u0.contains(term.entry, term.q))
          D0.add_to(u0.at(term.entry, term.q), col, term.coeff);
    }
    for (long q = s1.lo[e]; q <= s1.hi[e]; ++q) {
      const std::size_t col = s1.at(e, q);
      D0.add_to(t01.at(e, q), col, one);
      for (const auto& term : cx.apply(e, q))
        if (u1.contains(term.entry, term.q))
          D0.add_to(u1.at(term.entry, term.q), col, term.coeff);
    }
  }

  SparseMatrix D1(field, t2, t1);
  for (std::size_t e = 0; e < deg0.size(); ++e)
    for (long q = t01.lo[e]; q <= t01.hi[e]; ++q)
      for (const auto& term : cx.apply(e, q))
        if (w01.contains(term.entry, term.q))
          D1.add_to(w01.at(term.entry, term.q), t01.at(e, q), term.coeff);
  for (std::size_t e = 0; e < deg1.size(); ++e) {
    for (long q = u0.lo[e]; q <= u0.hi[e]; ++q)
      D1.add_to(w01.at(e, q), u0.at(e, q), one);
    for (long q = u1.lo[e]; q <= u1.hi[e]; ++q)
      D1.add_to(w01.at(e, q), u1.at(e, q), minus_one);
  }

  const std::size_t r0 = rank(D0);
  const std::size_t r1 = rank(D1);
  return {t0 - r0, t1 - r1 - r0, t2 - r1};
}

} // namespace quivhom
