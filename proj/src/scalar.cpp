#include "majorcat/scalar.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <string>

#include "majorcat/error.hpp"

namespace majorcat {
namespace {

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad_token(std::string_view token) {
  fail(ErrorCode::ParseError, "malformed number '" + std::string(token) + "'");
}

BigInt pow10(unsigned k) {
  BigInt r = 1;
  for (unsigned i = 0; i < k; ++i) r *= 10;
  return r;
}

// [+-]digits[.digits][(e|E)[+-]digits], at least one digit in the mantissa.
Rational parse_exact_decimal(std::string_view s) {
  const std::string_view original = s;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string digits;
  unsigned frac_digits = 0;
  bool seen_point = false;
  std::size_t i = 0;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (digits.empty()) bad_token(original);
  long exponent = 0;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') bad_token(original);
    const std::string_view exp_text = s.substr(i + 1);
    std::string_view body = exp_text;
    if (!body.empty() && body.front() == '+') body.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), exponent);
    if (body.empty() || ec != std::errc{} || ptr != body.data() + body.size()) bad_token(original);
    if (exponent > 4000 || exponent < -4000) bad_token(original);
  }
  // gmp would read a leading zero as an octal prefix
  const auto first = digits.find_first_not_of('0');
  Rational value{first == std::string::npos ? BigInt(0) : BigInt(digits.substr(first))};
  const long scale = exponent - static_cast<long>(frac_digits);
  if (scale >= 0) {
    value *= Rational(pow10(static_cast<unsigned>(scale)));
  } else {
    value /= Rational(pow10(static_cast<unsigned>(-scale)));
  }
  return negative ? Rational(-value) : value;
}

double parse_float_decimal(std::string_view s) {
  const std::string_view original = s;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) bad_token(original);
  return value;
}

}  // namespace

double parse_float_token(std::string_view token) {
  token = strip(token);
  if (const auto slash = token.find('/'); slash != std::string_view::npos) {
    const double num = parse_float_decimal(strip(token.substr(0, slash)));
    const double den = parse_float_decimal(strip(token.substr(slash + 1)));
    if (den == 0.0) fail(ErrorCode::ParseError, "zero denominator in '" + std::string(token) + "'");
    return num / den;
  }
  return parse_float_decimal(token);
}

Rational parse_exact_token(std::string_view token) {
  token = strip(token);
  if (const auto slash = token.find('/'); slash != std::string_view::npos) {
    const Rational num = parse_exact_decimal(strip(token.substr(0, slash)));
    const Rational den = parse_exact_decimal(strip(token.substr(slash + 1)));
    if (den == 0) fail(ErrorCode::ParseError, "zero denominator in '" + std::string(token) + "'");
    return num / den;
  }
  return parse_exact_decimal(token);
}

std::string format_scalar(double x) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

std::string format_scalar(const Rational& x) {
  return numerator(x).str() + "/" + denominator(x).str();
}

std::string round_decimal(const Rational& x, int digits) {
  const bool negative = x < 0;
  const Rational scaled = (negative ? Rational(-x) : x) * Rational(pow10(static_cast<unsigned>(digits))) +
                          Rational(1, 2);
  const BigInt q = numerator(scaled) / denominator(scaled);
  std::string s = q.str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, digits - s.size() + 1, '0');
    s.insert(s.size() - digits, ".");
  }
  return negative ? "-" + s : s;
}

}  // namespace majorcat
