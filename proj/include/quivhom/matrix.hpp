#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "quivhom/errors.hpp"
#include "quivhom/field.hpp"

namespace quivhom {

/// Dense row-major matrix over a Field.
///
/// Rational entries are kept in lowest terms and residues in [0, p); the
/// storage for F_p is a flat uint32 array so elimination stays cheap.
class ExactMatrix {
public:
  ExactMatrix() = default;
  ExactMatrix(Field field, std::size_t rows, std::size_t cols);

  static ExactMatrix identity(Field field, std::size_t n);
  static ExactMatrix from_ints(Field field, const std::vector<std::vector<long long>>& rows);
  /// n x 1 column from integer entries.
  static ExactMatrix column_from_ints(Field field, const std::vector<long long>& entries);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Scalar& v);
  void set_int(std::size_t r, std::size_t c, long long v) { set(r, c, field_.from_int(v)); }
  void add_to(std::size_t r, std::size_t c, const Scalar& v);
  bool is_zero_at(std::size_t r, std::size_t c) const;
  bool is_zero() const;

  ExactMatrix transpose() const;
  ExactMatrix column(std::size_t c) const;
  ExactMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const ExactMatrix& b);
  ExactMatrix scaled(const Scalar& s) const;

  /// Column-major vectorization as an (rows*cols) x 1 column.
  ExactMatrix vectorized() const;
  /// Inverse of vectorized().
  static ExactMatrix unvectorize(const ExactMatrix& column, std::size_t rows, std::size_t cols,
                                 std::size_t offset = 0);

  static ExactMatrix hstack(std::span<const ExactMatrix> parts);
  static ExactMatrix vstack(std::span<const ExactMatrix> parts);

  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b);
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);

  // Raw storage for the elimination kernels.
  const std::vector<mpq_class>& rational_data() const { return std::get<0>(data_); }
  const std::vector<std::uint32_t>& residue_data() const { return std::get<1>(data_); }

private:
  void check_index(std::size_t r, std::size_t c) const;

  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::variant<std::vector<mpq_class>, std::vector<std::uint32_t>> data_;
};

using ColumnVector = ExactMatrix;

ExactMatrix kron(const ExactMatrix& a, const ExactMatrix& b);

std::size_t rank(const ExactMatrix& m);

/// Pivot columns of the row echelon form, in increasing order.
std::vector<std::size_t> pivot_columns(const ExactMatrix& m);

/// Basis of the right kernel, one column per free variable of the reduced
/// echelon form (pivots chosen as the first nonzero entry in column order).
std::vector<ColumnVector> kernel_basis(const ExactMatrix& m);

/// Some x with m*x = b, or nullopt if b is not in the column space.
std::optional<ColumnVector> solve(const ExactMatrix& m, const ColumnVector& b);

inline std::size_t cokernel_dimension(const ExactMatrix& m) { return m.rows() - rank(m); }

/// Matrix whose columns are the given vectors (rows must be supplied for an
/// empty list).
ExactMatrix columns_to_matrix(Field field, std::size_t rows, std::span<const ColumnVector> columns);

} // namespace quivhom
