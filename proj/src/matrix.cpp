#include "quivhom/matrix.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "detail/field_ops.hpp"

namespace quivhom {

namespace {

using detail::RationalOps;
using detail::ResidueOps;

// In-place Gaussian elimination on a rows x cols row-major array, pivoting
// only in columns [0, col_limit). Pivot row for a column is the first row (at
// or below the current pivot row) with a nonzero entry there. Returns the
// pivot columns. With `reduced`, entries above pivots are cleared too (RREF).
template <class Ops>
std::vector<std::size_t> eliminate(std::vector<typename Ops::T>& a, std::size_t rows,
                                   std::size_t cols, std::size_t col_limit, bool reduced,
                                   const Ops& ops) {
  using T = typename Ops::T;
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> support;
  std::size_t prow = 0;
  for (std::size_t col = 0; col < col_limit && prow < rows; ++col) {
    std::size_t r = prow;
    while (r < rows && Ops::is_zero(a[r * cols + col]))
      ++r;
    if (r == rows)
      continue;
    if (r != prow)
      std::swap_ranges(a.begin() + r * cols, a.begin() + (r + 1) * cols, a.begin() + prow * cols);
    T* piv = a.data() + prow * cols;
    T pinv = ops.inv(piv[col]);
    support.clear();
    for (std::size_t j = col; j < cols; ++j) {
      if (!Ops::is_zero(piv[j])) {
        ops.scale(piv[j], pinv);
        support.push_back(j);
      }
    }
    std::size_t first = reduced ? 0 : prow + 1;
    for (std::size_t i = first; i < rows; ++i) {
      if (i == prow)
        continue;
      T* row = a.data() + i * cols;
      if (Ops::is_zero(row[col]))
        continue;
      T f = row[col];
      for (std::size_t j : support)
        ops.axpy(row[j], f, piv[j]);
    }
    pivots.push_back(col);
    ++prow;
  }
  return pivots;
}

template <class Fn>
decltype(auto) dispatch(const Field& field, Fn&& fn) {
  if (field.is_prime_field())
    return fn(ResidueOps{field.modulus()});
  return fn(RationalOps{});
}

template <class Ops>
std::vector<typename Ops::T> copy_data(const ExactMatrix& m) {
  if constexpr (std::is_same_v<Ops, RationalOps>)
    return m.rational_data();
  else
    return m.residue_data();
}

} // namespace

ExactMatrix::ExactMatrix(Field field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols) {
  if (field.is_prime_field())
    data_ = std::vector<std::uint32_t>(rows * cols, 0);
  else
    data_ = std::vector<mpq_class>(rows * cols);
}

ExactMatrix ExactMatrix::identity(Field field, std::size_t n) {
  ExactMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i)
    m.set(i, i, field.one());
  return m;
}

ExactMatrix ExactMatrix::from_ints(Field field, const std::vector<std::vector<long long>>& rows) {
  std::size_t nc = rows.empty() ? 0 : rows.front().size();
  ExactMatrix m(field, rows.size(), nc);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != nc)
      throw DimensionMismatch("ragged row list");
    for (std::size_t c = 0; c < nc; ++c)
      m.set_int(r, c, rows[r][c]);
  }
  return m;
}

ExactMatrix ExactMatrix::column_from_ints(Field field, const std::vector<long long>& entries) {
  ExactMatrix m(field, entries.size(), 1);
  for (std::size_t r = 0; r < entries.size(); ++r)
    m.set_int(r, 0, entries[r]);
  return m;
}

void ExactMatrix::check_index(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_)
    throw std::out_of_range("matrix index (" + std::to_string(r) + "," + std::to_string(c) +
                            ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
}

Scalar ExactMatrix::at(std::size_t r, std::size_t c) const {
  check_index(r, c);
  if (field_.is_prime_field())
    return Scalar(static_cast<unsigned long>(std::get<1>(data_)[r * cols_ + c]));
  return std::get<0>(data_)[r * cols_ + c];
}

void ExactMatrix::set(std::size_t r, std::size_t c, const Scalar& v) {
  check_index(r, c);
  Scalar n = field_.normalize(v);
  if (field_.is_prime_field())
    std::get<1>(data_)[r * cols_ + c] = static_cast<std::uint32_t>(n.get_num().get_ui());
  else
    std::get<0>(data_)[r * cols_ + c] = std::move(n);
}

void ExactMatrix::add_to(std::size_t r, std::size_t c, const Scalar& v) {
  set(r, c, field_.add(at(r, c), field_.normalize(v)));
}

bool ExactMatrix::is_zero_at(std::size_t r, std::size_t c) const {
  check_index(r, c);
  if (field_.is_prime_field())
    return std::get<1>(data_)[r * cols_ + c] == 0;
  return sgn(std::get<0>(data_)[r * cols_ + c]) == 0;
}

bool ExactMatrix::is_zero() const {
  return std::visit(
      [](const auto& v) {
        return std::all_of(v.begin(), v.end(), [](const auto& x) { return x == 0; });
      },
      data_);
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(field_, cols_, rows_);
  std::visit(
      [&](const auto& src) {
        auto& dst = std::get<std::decay_t<decltype(src)>>(t.data_);
        for (std::size_t r = 0; r < rows_; ++r)
          for (std::size_t c = 0; c < cols_; ++c)
            dst[c * rows_ + r] = src[r * cols_ + c];
      },
      data_);
  return t;
}

ExactMatrix ExactMatrix::column(std::size_t c) const { return block(0, c, rows_, 1); }

ExactMatrix ExactMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr,
                               std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_)
    throw std::out_of_range("block outside matrix");
  ExactMatrix b(field_, nr, nc);
  std::visit(
      [&](const auto& src) {
        auto& dst = std::get<std::decay_t<decltype(src)>>(b.data_);
        for (std::size_t r = 0; r < nr; ++r)
          for (std::size_t c = 0; c < nc; ++c)
            dst[r * nc + c] = src[(r0 + r) * cols_ + c0 + c];
      },
      data_);
  return b;
}

void ExactMatrix::set_block(std::size_t r0, std::size_t c0, const ExactMatrix& b) {
  if (!(b.field_ == field_))
    throw DimensionMismatch("field mismatch in set_block");
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_)
    throw std::out_of_range("block outside matrix");
  std::visit(
      [&](auto& dst) {
        const auto& src = std::get<std::decay_t<decltype(dst)>>(b.data_);
        for (std::size_t r = 0; r < b.rows_; ++r)
          for (std::size_t c = 0; c < b.cols_; ++c)
            dst[(r0 + r) * cols_ + c0 + c] = src[r * b.cols_ + c];
      },
      data_);
}

ExactMatrix ExactMatrix::scaled(const Scalar& s) const {
  ExactMatrix out(field_, rows_, cols_);
  Scalar n = field_.normalize(s);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (!is_zero_at(r, c))
        out.set(r, c, field_.mul(at(r, c), n));
  return out;
}

ExactMatrix ExactMatrix::vectorized() const {
  ExactMatrix v(field_, rows_ * cols_, 1);
  for (std::size_t c = 0; c < cols_; ++c)
    for (std::size_t r = 0; r < rows_; ++r)
      if (!is_zero_at(r, c))
        v.set(c * rows_ + r, 0, at(r, c));
  return v;
}

ExactMatrix ExactMatrix::unvectorize(const ExactMatrix& column, std::size_t rows,
                                     std::size_t cols, std::size_t offset) {
  if (column.cols() != 1 || offset + rows * cols > column.rows())
    throw DimensionMismatch("unvectorize: column too short");
  ExactMatrix m(column.field(), rows, cols);
  for (std::size_t c = 0; c < cols; ++c)
    for (std::size_t r = 0; r < rows; ++r)
      if (!column.is_zero_at(offset + c * rows + r, 0))
        m.set(r, c, column.at(offset + c * rows + r, 0));
  return m;
}

ExactMatrix ExactMatrix::hstack(std::span<const ExactMatrix> parts) {
  if (parts.empty())
    throw DimensionMismatch("hstack of nothing");
  std::size_t nc = 0;
  for (const auto& p : parts) {
    if (p.rows() != parts.front().rows())
      throw DimensionMismatch("hstack row mismatch");
    nc += p.cols();
  }
  ExactMatrix out(parts.front().field(), parts.front().rows(), nc);
  std::size_t c0 = 0;
  for (const auto& p : parts) {
    out.set_block(0, c0, p);
    c0 += p.cols();
  }
  return out;
}

ExactMatrix ExactMatrix::vstack(std::span<const ExactMatrix> parts) {
  if (parts.empty())
    throw DimensionMismatch("vstack of nothing");
  std::size_t nr = 0;
  for (const auto& p : parts) {
    if (p.cols() != parts.front().cols())
      throw DimensionMismatch("vstack column mismatch");
    nr += p.rows();
  }
  ExactMatrix out(parts.front().field(), nr, parts.front().cols());
  std::size_t r0 = 0;
  for (const auto& p : parts) {
    out.set_block(r0, 0, p);
    r0 += p.rows();
  }
  return out;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (!(a.field_ == b.field_))
    throw DimensionMismatch("field mismatch in product");
  if (a.cols_ != b.rows_)
    throw DimensionMismatch("product of " + std::to_string(a.rows_) + "x" +
                            std::to_string(a.cols_) + " and " + std::to_string(b.rows_) + "x" +
                            std::to_string(b.cols_));
  ExactMatrix c(a.field_, a.rows_, b.cols_);
  const std::size_t n = a.cols_, m = b.cols_;
  if (a.field_.is_prime_field()) {
    const std::uint64_t p = a.field_.modulus();
    const auto& av = std::get<1>(a.data_);
    const auto& bv = std::get<1>(b.data_);
    auto& cv = std::get<1>(c.data_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      std::uint32_t* crow = cv.data() + i * m;
      for (std::size_t k = 0; k < n; ++k) {
        std::uint64_t f = av[i * n + k];
        if (f == 0)
          continue;
        const std::uint32_t* brow = bv.data() + k * m;
        for (std::size_t j = 0; j < m; ++j)
          if (brow[j] != 0)
            crow[j] = static_cast<std::uint32_t>((crow[j] + f * brow[j]) % p);
      }
    }
  } else {
    const auto& av = std::get<0>(a.data_);
    const auto& bv = std::get<0>(b.data_);
    auto& cv = std::get<0>(c.data_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const mpq_class& f = av[i * n + k];
        if (sgn(f) == 0)
          continue;
        for (std::size_t j = 0; j < m; ++j)
          if (sgn(bv[k * m + j]) != 0)
            cv[i * m + j] += f * bv[k * m + j];
      }
  }
  return c;
}

namespace {

ExactMatrix combine(const ExactMatrix& a, const ExactMatrix& b, bool subtract) {
  if (!(a.field() == b.field()) || a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("shape mismatch in matrix sum");
  ExactMatrix out(a.field(), a.rows(), a.cols());
  const Field& f = a.field();
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (a.is_zero_at(r, c) && b.is_zero_at(r, c))
        continue;
      out.set(r, c, subtract ? f.sub(a.at(r, c), b.at(r, c)) : f.add(a.at(r, c), b.at(r, c)));
    }
  return out;
}

} // namespace

ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) { return combine(a, b, false); }
ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) { return combine(a, b, true); }

bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

ExactMatrix kron(const ExactMatrix& a, const ExactMatrix& b) {
  if (!(a.field() == b.field()))
    throw DimensionMismatch("field mismatch in kron");
  const Field& f = a.field();
  ExactMatrix out(f, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a.is_zero_at(i, j))
        continue;
      Scalar s = a.at(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          if (!b.is_zero_at(k, l))
            out.set(i * b.rows() + k, j * b.cols() + l, f.mul(s, b.at(k, l)));
    }
  return out;
}

std::size_t rank(const ExactMatrix& m) {
  if (m.empty())
    return 0;
  return dispatch(m.field(), [&](auto ops) {
    auto data = copy_data<decltype(ops)>(m);
    return eliminate(data, m.rows(), m.cols(), m.cols(), false, ops).size();
  });
}

std::vector<std::size_t> pivot_columns(const ExactMatrix& m) {
  if (m.empty())
    return {};
  return dispatch(m.field(), [&](auto ops) {
    auto data = copy_data<decltype(ops)>(m);
    return eliminate(data, m.rows(), m.cols(), m.cols(), false, ops);
  });
}

std::vector<ColumnVector> kernel_basis(const ExactMatrix& m) {
  const Field& field = m.field();
  const std::size_t n = m.cols();
  std::vector<ColumnVector> basis;
  if (n == 0)
    return basis;
  if (m.rows() == 0) {
    for (std::size_t j = 0; j < n; ++j) {
      ColumnVector v(field, n, 1);
      v.set(j, 0, field.one());
      basis.push_back(std::move(v));
    }
    return basis;
  }
  dispatch(field, [&](auto ops) {
    auto data = copy_data<decltype(ops)>(m);
    auto pivots = eliminate(data, m.rows(), n, n, true, ops);
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivots)
      is_pivot[c] = true;
    for (std::size_t free = 0; free < n; ++free) {
      if (is_pivot[free])
        continue;
      ColumnVector v(field, n, 1);
      v.set(free, 0, field.one());
      for (std::size_t r = 0; r < pivots.size(); ++r) {
        Scalar e = [&] {
          if constexpr (std::is_same_v<decltype(ops), RationalOps>)
            return Scalar(data[r * n + free]);
          else
            return Scalar(static_cast<unsigned long>(data[r * n + free]));
        }();
        if (!field.is_zero(e))
          v.set(pivots[r], 0, field.neg(e));
      }
      basis.push_back(std::move(v));
    }
    return 0;
  });
#ifndef NDEBUG
  if (basis.size() + rank(m) != n)
    throw std::logic_error("rank-nullity violated in kernel_basis");
  for (const auto& v : basis)
    if (!(m * v).is_zero())
      throw std::logic_error("kernel_basis produced a non-kernel vector");
#endif
  return basis;
}

std::optional<ColumnVector> solve(const ExactMatrix& m, const ColumnVector& b) {
  if (b.cols() != 1 || b.rows() != m.rows())
    throw DimensionMismatch("solve: right-hand side has " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()) + " entries, expected " +
                            std::to_string(m.rows()) + "x1");
  if (!(b.field() == m.field()))
    throw DimensionMismatch("solve: field mismatch");
  const Field& field = m.field();
  const std::size_t n = m.cols();
  const std::vector<ExactMatrix> parts{m, b};
  ExactMatrix aug = m.rows() == 0 ? ExactMatrix(field, 0, n + 1) : ExactMatrix::hstack(parts);
  return dispatch(field, [&](auto ops) -> std::optional<ColumnVector> {
    auto data = copy_data<decltype(ops)>(aug);
    const std::size_t w = n + 1;
    auto pivots = eliminate(data, aug.rows(), w, n, true, ops);
    for (std::size_t r = pivots.size(); r < aug.rows(); ++r)
      if (!decltype(ops)::is_zero(data[r * w + n]))
        return std::nullopt;
    ColumnVector x(field, n, 1);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      if constexpr (std::is_same_v<decltype(ops), RationalOps>)
        x.set(pivots[r], 0, data[r * w + n]);
      else
        x.set(pivots[r], 0, Scalar(static_cast<unsigned long>(data[r * w + n])));
    }
    return x;
  });
}

ExactMatrix columns_to_matrix(Field field, std::size_t rows, std::span<const ColumnVector> columns) {
  ExactMatrix out(field, rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].rows() != rows || columns[j].cols() != 1)
      throw DimensionMismatch("columns_to_matrix: wrong column shape");
    out.set_block(0, j, columns[j]);
  }
  return out;
}

} // namespace quivhom
