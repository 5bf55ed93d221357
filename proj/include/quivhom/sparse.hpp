#pragma once

#include <cstddef>
#include <vector>

#include "quivhom/field.hpp"
#include "quivhom/matrix.hpp"

namespace quivhom {

struct SparseEntry {
  std::size_t col;
  Scalar value;
};

/// Row-wise sparse matrix over a Field; each row keeps its nonzero entries
/// sorted by column. Used for the resolution maps, whose size grows with the
/// number of paths but which carry only a handful of entries per row.
class SparseMatrix {
public:
  SparseMatrix() = default;
  SparseMatrix(Field field, std::size_t rows, std::size_t cols);

  static SparseMatrix from_dense(const ExactMatrix& m);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<SparseEntry>& row(std::size_t r) const { return data_.at(r); }
  std::size_t nonzeros() const;

  Scalar at(std::size_t r, std::size_t c) const;
  void add_to(std::size_t r, std::size_t c, const Scalar& v);

  ExactMatrix to_dense() const;
  SparseMatrix transpose() const;

  /// Sparse times dense.
  friend ExactMatrix operator*(const SparseMatrix& a, const ExactMatrix& b);

private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::vector<SparseEntry>> data_;
};

/// Rank by incremental row reduction, pivoting on the last nonzero column of
/// each row. Rows whose trailing entries are distinct need no reduction at all.
std::size_t rank(const SparseMatrix& m);

inline std::size_t nullity(const SparseMatrix& m) { return m.cols() - rank(m); }

} // namespace quivhom
