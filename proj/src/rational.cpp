#include "splitpack/rational.hpp"

#include <charconv>
#include <limits>
#include <ostream>

namespace splitpack {

namespace {

using Wide = __int128;

Wide gcd_wide(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(Wide v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  if (text.empty()) throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec == std::errc::result_out_of_range) {
    throw std::overflow_error("rational component out of range: '" + std::string(whole) + "'");
  }
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Rational Rational::from_wide(Wide num, Wide den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Wide g = gcd_wide(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (!fits(num) || !fits(den)) throw std::overflow_error("rational overflow");
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational::Rational(std::int64_t num, std::int64_t den) { *this = from_wide(num, den); }

std::int64_t Rational::floor() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

std::int64_t Rational::ceil() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ > 0) ++q;
  return q;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::decimal(int places) const {
  Wide scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  // Round half away from zero.
  Wide scaled = static_cast<Wide>(num_) * scale * 2 / den_;
  scaled = scaled >= 0 ? (scaled + 1) / 2 : (scaled - 1) / 2;
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  Wide int_part = scaled / scale;
  Wide frac_part = scaled % scale;
  std::string out = negative ? "-" : "";
  out += std::to_string(static_cast<long long>(int_part));
  if (places > 0) {
    std::string frac = std::to_string(static_cast<long long>(frac_part));
    out += "." + std::string(static_cast<std::size_t>(places) - frac.size(), '0') + frac;
  }
  return out;
}

Rational Rational::parse(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t den = parse_int(text.substr(slash + 1), whole);
    if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(whole) + "'");
    return Rational(parse_int(text.substr(0, slash), whole), den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_text = text.substr(0, dot);
    std::string_view frac_text = text.substr(dot + 1);
    bool negative = !int_text.empty() && int_text.front() == '-';
    if (negative || (!int_text.empty() && int_text.front() == '+')) int_text.remove_prefix(1);
    if (frac_text.empty() || frac_text.size() > 18 || frac_text.front() == '+' ||
        frac_text.front() == '-') {
      throw std::invalid_argument("malformed decimal: '" + std::string(whole) + "'");
    }
    std::int64_t int_part = int_text.empty() ? 0 : parse_int(int_text, whole);
    if (int_part < 0) throw std::invalid_argument("malformed decimal: '" + std::string(whole) + "'");
    std::int64_t frac = parse_int(frac_text, whole);
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac_text.size(); ++i) scale *= 10;
    Rational r = Rational(int_part) + Rational(frac, scale);
    return negative ? -r : r;
  }
  return Rational(parse_int(text, whole));
}

Rational& Rational::operator+=(const Rational& rhs) {
  *this = from_wide(static_cast<Wide>(num_) * rhs.den_ + static_cast<Wide>(rhs.num_) * den_,
                    static_cast<Wide>(den_) * rhs.den_);
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  *this = from_wide(static_cast<Wide>(num_) * rhs.den_ - static_cast<Wide>(rhs.num_) * den_,
                    static_cast<Wide>(den_) * rhs.den_);
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  *this = from_wide(static_cast<Wide>(num_) * rhs.num_, static_cast<Wide>(den_) * rhs.den_);
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) throw std::domain_error("rational division by zero");
  *this = from_wide(static_cast<Wide>(num_) * rhs.den_, static_cast<Wide>(den_) * rhs.num_);
  return *this;
}

Rational Rational::operator-() const {
  if (num_ == std::numeric_limits<std::int64_t>::min()) throw std::overflow_error("rational overflow");
  Rational r = *this;
  r.num_ = -r.num_;
  return r;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  Wide lhs = static_cast<Wide>(a.num_) * b.den_;
  Wide rhs = static_cast<Wide>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace splitpack
