#include "quivhom/sparse.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <utility>

#include "detail/field_ops.hpp"

namespace quivhom {

SparseMatrix::SparseMatrix(Field field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows) {}

SparseMatrix SparseMatrix::from_dense(const ExactMatrix& m) {
  SparseMatrix s(m.field(), m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!m.is_zero_at(r, c))
        s.data_[r].push_back({c, m.at(r, c)});
  return s;
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& row : data_)
    n += row.size();
  return n;
}

Scalar SparseMatrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_)
    throw std::out_of_range("sparse index out of range");
  const auto& row = data_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const SparseEntry& e, std::size_t col) { return e.col < col; });
  if (it != row.end() && it->col == c)
    return it->value;
  return field_.zero();
}

void SparseMatrix::add_to(std::size_t r, std::size_t c, const Scalar& v) {
  if (r >= rows_ || c >= cols_)
    throw std::out_of_range("sparse index (" + std::to_string(r) + ", " + std::to_string(c) +
                            ") out of range");
  Scalar x = field_.normalize(v);
  if (field_.is_zero(x))
    return;
  auto& row = data_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const SparseEntry& e, std::size_t col) { return e.col < col; });
  if (it != row.end() && it->col == c) {
    it->value = field_.add(it->value, x);
    if (field_.is_zero(it->value))
      row.erase(it);
  } else {
    row.insert(it, {c, std::move(x)});
  }
}

ExactMatrix SparseMatrix::to_dense() const {
  ExactMatrix m(field_, rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& e : data_[r])
      m.set(r, e.col, e.value);
  return m;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& e : data_[r])
      t.data_[e.col].push_back({r, e.value});
  return t;
}

ExactMatrix operator*(const SparseMatrix& a, const ExactMatrix& b) {
  if (a.cols() != b.rows())
    throw DimensionMismatch("sparse product: " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " times " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
  if (!(a.field() == b.field()))
    throw DimensionMismatch("sparse product over different fields");
  const Field& f = a.field();
  ExactMatrix out(f, a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) {
      Scalar acc = f.zero();
      for (const auto& e : a.row(r))
        if (!b.is_zero_at(e.col, c))
          acc = f.add(acc, f.mul(e.value, b.at(e.col, c)));
      if (!f.is_zero(acc))
        out.set(r, c, acc);
    }
  return out;
}

namespace {

template <class T>
using Row = std::vector<std::pair<std::size_t, T>>;

// row -= f * pivot, both sorted by column.
template <class Ops>
void subtract_multiple(Row<typename Ops::T>& row, const typename Ops::T& f,
                       const Row<typename Ops::T>& pivot, const Ops& ops,
                       Row<typename Ops::T>& scratch) {
  using T = typename Ops::T;
  scratch.clear();
  std::size_t i = 0, j = 0;
  while (i < row.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
      scratch.push_back(std::move(row[i++]));
    } else {
      T v{};
      std::size_t col = pivot[j].first;
      if (i < row.size() && row[i].first == col)
        v = std::move(row[i++].second);
      ops.axpy(v, f, pivot[j].second);
      ++j;
      if (!Ops::is_zero(v))
        scratch.emplace_back(col, std::move(v));
    }
  }
  row.swap(scratch);
}

template <class Ops>
std::size_t sparse_rank(std::vector<Row<typename Ops::T>> rows, std::size_t cols,
                        const Ops& ops) {
  using T = typename Ops::T;
  std::vector<std::optional<Row<T>>> pivot_of(cols);
  Row<T> scratch;
  std::size_t rank = 0;
  for (auto& row : rows) {
    while (!row.empty()) {
      auto& lead = pivot_of[row.back().first];
      if (!lead)
        break;
      T f = row.back().second;
      subtract_multiple(row, f, *lead, ops, scratch);
    }
    if (row.empty())
      continue;
    T inv = ops.inv(row.back().second);
    for (auto& e : row)
      ops.scale(e.second, inv);
    std::size_t col = row.back().first;
    pivot_of[col] = std::move(row);
    ++rank;
  }
  return rank;
}

} // namespace

std::size_t rank(const SparseMatrix& m) {
  const Field& f = m.field();
  if (f.is_prime_field()) {
    std::vector<Row<std::uint32_t>> rows(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (const auto& e : m.row(r))
        rows[r].emplace_back(e.col, static_cast<std::uint32_t>(e.value.get_num().get_ui()));
    return sparse_rank(std::move(rows), m.cols(),
                       detail::ResidueOps{static_cast<std::uint32_t>(f.modulus())});
  }
  std::vector<Row<mpq_class>> rows(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto& e : m.row(r))
      rows[r].emplace_back(e.col, e.value);
  return sparse_rank(std::move(rows), m.cols(), detail::RationalOps{});
}

} // namespace quivhom
