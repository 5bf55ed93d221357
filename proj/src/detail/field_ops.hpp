#pragma once

#include <cstdint>

#include "quivhom/field.hpp"

namespace quivhom::detail {

struct RationalOps {
  using T = mpq_class;
  static bool is_zero(const T& a) { return sgn(a) == 0; }
  T inv(const T& a) const { return 1 / a; }
  void scale(T& a, const T& s) const { a *= s; }
  // a -= f * b
  void axpy(T& a, const T& f, const T& b) const { a -= f * b; }
};

struct ResidueOps {
  using T = std::uint32_t;
  std::uint32_t p;
  static bool is_zero(T a) { return a == 0; }
  T inv(T a) const { return inverse_mod(a, p); }
  void scale(T& a, T s) const { a = static_cast<T>(std::uint64_t{a} * s % p); }
  void axpy(T& a, T f, T b) const {
    a = static_cast<T>((std::uint64_t{a} + std::uint64_t{p - f} * b) % p);
  }
};

} // namespace quivhom::detail
