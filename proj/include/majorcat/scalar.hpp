#pragma once

#include <concepts>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

namespace majorcat {

/// Arbitrary-precision rational. Expression templates are off so that `auto`
/// always yields a value.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

enum class Mode { Exact, Float };

template <class T>
concept SchmidtScalar = std::same_as<T, double> || std::same_as<T, Rational>;

template <SchmidtScalar T>
inline constexpr bool is_exact_v = std::same_as<T, Rational>;

template <SchmidtScalar T>
inline constexpr Mode mode_of_v = is_exact_v<T> ? Mode::Exact : Mode::Float;

// Float-mode tolerances. Exact mode never uses them.
inline constexpr double kNormalizationTolerance = 1e-9;
inline constexpr double kZeroThreshold = 1e-15;
inline constexpr double kMajorizationSlack = 1e-12;
inline constexpr double kMinimizerRelTolerance = 1e-10;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }

/// Parses one token of the vector text format: a decimal literal
/// ("0.081", "1e-3") or a fraction "p/q". Throws ParseError.
double parse_float_token(std::string_view token);
/// Same grammar, but decimals become exact rationals ("0.081" -> 81/1000).
Rational parse_exact_token(std::string_view token);

template <SchmidtScalar T>
T parse_scalar(std::string_view token) {
  if constexpr (is_exact_v<T>) {
    return parse_exact_token(token);
  } else {
    return parse_float_token(token);
  }
}

/// Shortest round-trip decimal.
std::string format_scalar(double x);
/// Always "p/q", including "1/1" and "0/1".
std::string format_scalar(const Rational& x);

/// Decimal rendering of an exact value, rounded half away from zero to
/// `digits` places.
std::string round_decimal(const Rational& x, int digits);

}  // namespace majorcat
