#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace splitpack {

/// Exact rational number over 64-bit integers.
///
/// Always kept in lowest terms with a positive denominator. Intermediate
/// products are formed in 128-bit arithmetic; a result that does not fit back
/// into 64 bits raises std::overflow_error instead of wrapping silently.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT(implicit)
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  bool is_positive() const { return num_ > 0; }
  bool is_negative() const { return num_ < 0; }

  std::int64_t floor() const;
  std::int64_t ceil() const;

  /// Renders "p/q", or just "p" when the value is an integer.
  std::string str() const;
  /// Display-only decimal rendering with a fixed number of places.
  std::string decimal(int places) const;
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// Accepts "p/q", "p", and finite decimals such as "0.125" or "-2.5".
  /// A decimal with d fractional digits is read as an exact fraction over 10^d.
  static Rational parse(std::string_view text);

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  static Rational from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace splitpack

template <>
struct std::hash<splitpack::Rational> {
  std::size_t operator()(const splitpack::Rational& r) const noexcept {
    return std::hash<std::int64_t>{}(r.num()) * 1000003u ^ std::hash<std::int64_t>{}(r.den());
  }
};
