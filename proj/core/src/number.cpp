#include "eslrv/number.hpp"

#include <cctype>

namespace eslrv {

namespace {

using boost::multiprecision::cpp_int;

constexpr long kMaxExponent = 4096;

bool is_digit(char c) { return c >= '0' && c <= '9'; }

cpp_int pow10(long n) {
  cpp_int result = 1;
  cpp_int base = 10;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

}  // namespace

std::optional<Number> Number::parse(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && text[i] == '-') {
    negative = true;
    ++i;
  }
  std::string digits;
  long scale = 0;
  std::size_t int_start = i;
  while (i < text.size() && is_digit(text[i])) digits.push_back(text[i++]);
  if (i == int_start) return std::nullopt;
  if (i < text.size() && text[i] == '.') {
    ++i;
    std::size_t frac_start = i;
    while (i < text.size() && is_digit(text[i])) {
      digits.push_back(text[i++]);
      ++scale;
    }
    if (i == frac_start) return std::nullopt;
  }
  long exponent = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool exp_negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) exp_negative = text[i++] == '-';
    std::size_t exp_start = i;
    while (i < text.size() && is_digit(text[i])) {
      exponent = exponent * 10 + (text[i++] - '0');
      if (exponent > kMaxExponent) return std::nullopt;
    }
    if (i == exp_start) return std::nullopt;
    if (exp_negative) exponent = -exponent;
  }
  if (i != text.size()) return std::nullopt;

  // cpp_int reads a leading 0 as an octal prefix.
  std::size_t nonzero = digits.find_first_not_of('0');
  cpp_int mantissa(nonzero == std::string::npos ? std::string("0") : digits.substr(nonzero));
  if (negative) mantissa = -mantissa;
  long shift = exponent - scale;
  Rational value;
  if (shift >= 0) {
    value = Rational(mantissa * pow10(shift));
  } else {
    value = Rational(mantissa, pow10(-shift));
  }
  return Number(std::move(value));
}

std::string Number::to_string() const {
  cpp_int num = boost::multiprecision::numerator(value_);
  cpp_int den = boost::multiprecision::denominator(value_);
  if (den == 1) return num.str();

  cpp_int rest = den;
  long twos = 0;
  long fives = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  if (rest != 1) return num.str() + "/" + den.str();

  long places = std::max(twos, fives);
  cpp_int scaled = num * pow10(places) / den;
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string digits = scaled.str();
  if (digits.size() <= static_cast<std::size_t>(places)) {
    digits.insert(0, static_cast<std::size_t>(places) - digits.size() + 1, '0');
  }
  digits.insert(digits.size() - static_cast<std::size_t>(places), 1, '.');
  while (digits.back() == '0') digits.pop_back();
  if (digits.back() == '.') digits.pop_back();
  return negative ? "-" + digits : digits;
}

}  // namespace eslrv
