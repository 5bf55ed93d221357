#include "quivhom/field.hpp"

#include <stdexcept>

namespace quivhom {

bool is_prime(std::uint64_t n) {
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t r0 = p, r1 = a % p;
  std::int64_t s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    std::int64_t s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
  }
  if (r0 != 1)
    throw std::domain_error("residue is not invertible");
  std::int64_t res = s0 % static_cast<std::int64_t>(p);
  if (res < 0)
    res += p;
  return static_cast<std::uint32_t>(res);
}

Field Field::rationals() { return Field{}; }

Field Field::prime(std::uint64_t modulus) {
  if (modulus >= (std::uint64_t{1} << 31))
    throw std::invalid_argument("prime modulus must be below 2^31");
  if (!is_prime(modulus))
    throw std::invalid_argument("modulus " + std::to_string(modulus) + " is not prime");
  Field f;
  f.kind_ = FieldKind::prime_field;
  f.modulus_ = static_cast<std::uint32_t>(modulus);
  return f;
}

namespace {

std::uint32_t residue(const mpz_class& z, std::uint32_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
  return static_cast<std::uint32_t>(r.get_ui());
}

} // namespace

Scalar Field::from_int(long long v) const {
  if (kind_ == FieldKind::rationals)
    return Scalar(mpz_class(std::to_string(v)));
  long long r = v % static_cast<long long>(modulus_);
  if (r < 0)
    r += modulus_;
  return Scalar(static_cast<unsigned long>(r));
}

Scalar Field::normalize(const mpq_class& v) const {
  if (kind_ == FieldKind::rationals) {
    Scalar out(v);
    out.canonicalize();
    return out;
  }
  std::uint32_t den = residue(v.get_den(), modulus_);
  if (den == 0)
    throw std::domain_error("denominator vanishes in F_" + std::to_string(modulus_));
  std::uint64_t num = residue(v.get_num(), modulus_);
  return Scalar(static_cast<unsigned long>(num * inverse_mod(den, modulus_) % modulus_));
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
  if (kind_ == FieldKind::rationals)
    return a + b;
  unsigned long s = a.get_num().get_ui() + b.get_num().get_ui();
  return Scalar(s % modulus_);
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const {
  if (kind_ == FieldKind::rationals)
    return a - b;
  unsigned long s = a.get_num().get_ui() + modulus_ - b.get_num().get_ui();
  return Scalar(s % modulus_);
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
  if (kind_ == FieldKind::rationals)
    return a * b;
  std::uint64_t s = std::uint64_t{a.get_num().get_ui()} * b.get_num().get_ui();
  return Scalar(static_cast<unsigned long>(s % modulus_));
}

Scalar Field::neg(const Scalar& a) const {
  if (kind_ == FieldKind::rationals)
    return -a;
  unsigned long v = a.get_num().get_ui();
  return Scalar(v == 0 ? 0ul : modulus_ - v);
}

Scalar Field::inv(const Scalar& a) const {
  if (is_zero(a))
    throw std::domain_error("division by zero");
  if (kind_ == FieldKind::rationals)
    return 1 / a;
  return Scalar(static_cast<unsigned long>(
      inverse_mod(static_cast<std::uint32_t>(a.get_num().get_ui()), modulus_)));
}

bool Field::contains(const Scalar& a) const {
  if (kind_ == FieldKind::rationals)
    return true;
  return a.get_den() == 1 && sgn(a) >= 0 && a.get_num() < modulus_;
}

std::string Field::format(const Scalar& a) const { return a.get_str(); }

std::optional<Scalar> Field::parse(std::string_view text) const {
  if (text.empty())
    return std::nullopt;
  std::string s(text);
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size())
    return std::nullopt;
  bool seen_slash = false;
  for (std::size_t i = start; i < s.size(); ++i) {
    char c = s[i];
    if (c == '/') {
      if (seen_slash || i == start || i + 1 == s.size())
        return std::nullopt;
      seen_slash = true;
    } else if (c < '0' || c > '9') {
      return std::nullopt;
    }
  }
  if (s[0] == '+')
    s.erase(0, 1);
  mpq_class v;
  if (v.set_str(s, 10) != 0)
    return std::nullopt;
  if (v.get_den() == 0)
    return std::nullopt;
  v.canonicalize();
  try {
    return normalize(v);
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
}

std::string Field::name() const {
  if (kind_ == FieldKind::rationals)
    return "Q";
  return "F_" + std::to_string(modulus_);
}

} // namespace quivhom
