#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace eslrv {

/// Exact rational number used for every numeric constant in a specification.
///
/// Decimal literals such as `15.12` are stored exactly, so `15.12 * 10`
/// folds to `151.2` with no binary rounding. Values whose denominator has
/// prime factors other than 2 and 5 (e.g. `1/3`) are kept exact and render
/// as a fraction.
class Number {
 public:
  using Rational = boost::multiprecision::cpp_rational;

  Number() = default;
  explicit Number(long long value) : value_(value) {}
  explicit Number(Rational value) : value_(std::move(value)) {}

  /// Parses `-?digits(.digits)?([eE][+-]?digits)?`. Leading/trailing blanks
  /// are not accepted. Exponents are limited to |e| <= 4096.
  static std::optional<Number> parse(std::string_view text);

  /// Canonical rendering: integers without a point, terminating fractions
  /// as shortest decimal (`151.2`), everything else as `n/d`.
  std::string to_string() const;

  const Rational& value() const { return value_; }
  bool is_zero() const { return value_ == 0; }
  bool is_negative() const { return value_ < 0; }

  friend Number operator+(const Number& a, const Number& b) { return Number(a.value_ + b.value_); }
  friend Number operator-(const Number& a, const Number& b) { return Number(a.value_ - b.value_); }
  friend Number operator*(const Number& a, const Number& b) { return Number(a.value_ * b.value_); }
  /// Precondition: `b` is not zero.
  friend Number operator/(const Number& a, const Number& b) { return Number(a.value_ / b.value_); }
  Number operator-() const { return Number(Rational(-value_)); }

  friend bool operator==(const Number& a, const Number& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Number& a, const Number& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  Rational value_{0};
};

}  // namespace eslrv
