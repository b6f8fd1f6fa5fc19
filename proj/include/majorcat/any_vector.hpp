#pragma once

#include <span>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "majorcat/schmidt_vector.hpp"

namespace majorcat {

// Runtime-moded values for callers that only learn the mode at run time
// (the CLI, fixture loaders). Library code is templated on the scalar.
using AnyScalar = std::variant<double, Rational>;
using AnyVector = std::variant<FloatVector, ExactVector>;

inline Mode mode_of(const AnyScalar& x) { return x.index() == 0 ? Mode::Float : Mode::Exact; }
inline Mode mode_of(const AnyVector& v) { return v.index() == 0 ? Mode::Float : Mode::Exact; }

/// make_vector over mixed-mode input: all entries must share one mode.
inline AnyVector make_any_vector(std::span<const AnyScalar> entries) {
  if (entries.empty()) fail(ErrorCode::EmptyInput, "Schmidt vector needs at least one entry");
  const Mode mode = mode_of(entries.front());
  for (const auto& e : entries) {
    if (mode_of(e) != mode) fail(ErrorCode::MixedMode, "entries mix exact and float scalars");
  }
  if (mode == Mode::Exact) {
    std::vector<Rational> v;
    for (const auto& e : entries) v.push_back(std::get<Rational>(e));
    return make_vector<Rational>(v);
  }
  std::vector<double> v;
  for (const auto& e : entries) v.push_back(std::get<double>(e));
  return make_vector<double>(v);
}

inline AnyVector parse_any_vector(std::string_view text, Mode mode) {
  if (mode == Mode::Exact) return parse_vector<Rational>(text);
  return parse_vector<double>(text);
}

/// Calls `f` with the concrete vectors when every argument has the same mode;
/// otherwise throws MixedMode.
template <class F, class... Rest>
decltype(auto) visit_same_mode(F&& f, const AnyVector& first, const Rest&... rest) {
  if (((mode_of(rest) != mode_of(first)) || ...)) {
    fail(ErrorCode::MixedMode, "operands mix exact and float vectors");
  }
  if (first.index() == 0) {
    return std::forward<F>(f)(std::get<FloatVector>(first), std::get<FloatVector>(rest)...);
  }
  return std::forward<F>(f)(std::get<ExactVector>(first), std::get<ExactVector>(rest)...);
}

}  // namespace majorcat
