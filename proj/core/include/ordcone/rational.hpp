#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace ordcone {

/// Nonnegative exact rational num/den in lowest terms. Every operation
/// checks that the reduced result fits in 63 bits and throws CapacityError
/// otherwise.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::uint64_t num, std::uint64_t den = 1);

  std::uint64_t num() const noexcept { return num_; }
  std::uint64_t den() const noexcept { return den_; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_zero() const noexcept { return num_ == 0; }
  bool is_dyadic() const noexcept { return (den_ & (den_ - 1)) == 0; }

  /// "num/den" or "num" with decimal digits only.
  static Rational parse(std::string_view text);
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  /// Throws InvalidArgument when the result would be negative.
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }

  friend bool operator==(const Rational& a, const Rational& b) noexcept = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept;

 private:
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b);

/// Scales r by a common denominator: r * scale, which must be an integer.
std::uint64_t scaled_integer(const Rational& r, std::uint64_t scale);

/// floor(r * scale).
std::uint64_t floor_scaled(const Rational& r, std::uint64_t scale);

}  // namespace ordcone
