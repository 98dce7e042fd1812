#include "ordcone/rational.hpp"

#include <charconv>
#include <limits>
#include <numeric>

#include "ordcone/errors.hpp"

namespace ordcone {
namespace {

__extension__ typedef unsigned __int128 u128;

constexpr std::uint64_t kMax = static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());

Rational make_reduced(u128 num, u128 den) {
  if (den == 0) throw InvalidArgument("Rational: zero denominator");
  if (num == 0) return Rational(0, 1);
  u128 a = num, b = den;
  while (b != 0) {
    const u128 t = a % b;
    a = b;
    b = t;
  }
  num /= a;
  den /= a;
  if (num > kMax || den > kMax) throw CapacityError("Rational: result exceeds 63-bit range");
  return Rational(static_cast<std::uint64_t>(num), static_cast<std::uint64_t>(den));
}

}  // namespace

Rational::Rational(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw InvalidArgument("Rational: zero denominator");
  if (num > kMax || den > kMax) throw CapacityError("Rational: value exceeds 63-bit range");
  const std::uint64_t g = std::gcd(num, den);
  num_ = num == 0 ? 0 : num / g;
  den_ = num == 0 ? 1 : den / g;
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num_part = text.substr(0, slash);
  const std::string_view den_part = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  auto parse_digits = [&](std::string_view s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string_view::npos)
      throw InvalidArgument("Rational: malformed weight \"" + std::string(text) + "\"");
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw CapacityError("Rational: weight \"" + std::string(text) + "\" out of range");
    return v;
  };
  return Rational(parse_digits(num_part), parse_digits(den_part));
}

std::string Rational::to_string() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return make_reduced(u128(a.num_) * b.den_ + u128(b.num_) * a.den_, u128(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  const u128 lhs = u128(a.num_) * b.den_;
  const u128 rhs = u128(b.num_) * a.den_;
  if (rhs > lhs) throw InvalidArgument("Rational: negative result");
  return make_reduced(lhs - rhs, u128(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return make_reduced(u128(a.num_) * b.num_, u128(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw InvalidArgument("Rational: division by zero");
  return make_reduced(u128(a.num_) * b.den_, u128(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
  return u128(a.num_) * b.den_ <=> u128(b.num_) * a.den_;
}

std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b) {
  const u128 l = u128(a / std::gcd(a, b)) * b;
  if (l > kMax) throw CapacityError("lcm of weight denominators exceeds 63-bit range");
  return static_cast<std::uint64_t>(l);
}

std::uint64_t scaled_integer(const Rational& r, std::uint64_t scale) {
  if (scale % r.den() != 0) throw InvalidArgument("scaled_integer: scale is not a multiple of the denominator");
  const u128 v = u128(r.num()) * (scale / r.den());
  if (v > kMax) throw CapacityError("scaled weight exceeds 63-bit range");
  return static_cast<std::uint64_t>(v);
}

std::uint64_t floor_scaled(const Rational& r, std::uint64_t scale) {
  const u128 v = u128(r.num()) * scale / r.den();
  if (v > kMax) throw CapacityError("scaled weight exceeds 63-bit range");
  return static_cast<std::uint64_t>(v);
}

}  // namespace ordcone
