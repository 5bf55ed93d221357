#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace quivhom {

/// Field elements travel through the public API as GMP rationals. Over a
/// prime field the value is always the canonical residue in [0, p).
using Scalar = mpq_class;

enum class FieldKind { rationals, prime_field };

/// The ground field k: either Q or F_p with p prime and p < 2^31.
class Field {
public:
  Field() = default;

  static Field rationals();
  static Field prime(std::uint64_t modulus);

  FieldKind kind() const { return kind_; }
  std::uint32_t modulus() const { return modulus_; }
  bool is_prime_field() const { return kind_ == FieldKind::prime_field; }

  Scalar zero() const { return Scalar(0); }
  Scalar one() const { return Scalar(1); }
  Scalar from_int(long long v) const;

  /// Maps an arbitrary rational into the field (reduction mod p when
  /// applicable). Throws std::domain_error if a denominator vanishes mod p.
  Scalar normalize(const mpq_class& v) const;

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  Scalar inv(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }
  bool is_zero(const Scalar& a) const { return sgn(a) == 0; }
  bool contains(const Scalar& a) const;

  /// "3/2", "-1", "0" over Q; "0".."p-1" over F_p.
  std::string format(const Scalar& a) const;
  std::optional<Scalar> parse(std::string_view text) const;

  std::string name() const;

  bool operator==(const Field&) const = default;

private:
  FieldKind kind_ = FieldKind::rationals;
  std::uint32_t modulus_ = 0;
};

bool is_prime(std::uint64_t n);

/// Inverse of a nonzero residue modulo p via the extended Euclidean algorithm.
std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p);

} // namespace quivhom
