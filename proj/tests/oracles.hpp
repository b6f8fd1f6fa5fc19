#pragma once

// Reference implementations for cross-checking the library. They work on
// plain std::vector and share no code with majorcat's algorithms.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "majorcat/scalar.hpp"
#include "majorcat/schmidt_vector.hpp"
#include "majorcat/seeded_stream.hpp"

namespace oracle {

template <class T>
std::vector<T> entries(const majorcat::SchmidtVector<T>& a) {
  return std::vector<T>(a.coeffs().data(), a.coeffs().data() + a.size());
}

template <class T>
std::vector<T> product(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out;
  for (const auto& x : a) {
    for (const auto& y : b) out.push_back(x * y);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

/// alpha -> beta via the threshold form: for every t,
/// sum_i (alpha_i - t)_+ <= sum_i (beta_i - t)_+. Checking t at every entry
/// suffices since both sides are piecewise linear with kinks there.
template <class T>
bool majorizes(const std::vector<T>& alpha, const std::vector<T>& beta, const T& slack = T(0)) {
  auto excess = [](const std::vector<T>& v, const T& t) {
    T s(0);
    for (const auto& x : v) {
      if (x > t) s += x - t;
    }
    return s;
  };
  std::vector<T> ts = alpha;
  ts.insert(ts.end(), beta.begin(), beta.end());
  ts.push_back(T(0));
  for (const auto& t : ts) {
    if (excess(alpha, t) > excess(beta, t) + slack) return false;
  }
  return true;
}

/// min over k of (1 - sum_{l<k} alpha_l) / (1 - sum_{l<k} beta_l), both
/// vectors sorted; zero for a rank increase.
inline majorcat::Rational vidal(std::vector<majorcat::Rational> a, std::vector<majorcat::Rational> b) {
  using majorcat::Rational;
  auto rank = [](const std::vector<Rational>& v) {
    return std::count_if(v.begin(), v.end(), [](const Rational& x) { return x > 0; });
  };
  if (rank(b) > rank(a)) return Rational(0);
  const auto n = std::max(a.size(), b.size());
  a.resize(n, Rational(0));
  b.resize(n, Rational(0));
  Rational best(1);
  Rational sa(0), sb(0);
  for (std::size_t k = 0; k < n; ++k) {
    const Rational ea = 1 - sa, eb = 1 - sb;
    if (eb > 0 && ea / eb < best) best = ea / eb;
    sa += a[k];
    sb += b[k];
  }
  return best;
}

/// Random exact probability vector of length n with denominators up to
/// `grain` (so ties are common).
inline majorcat::ExactVector random_exact(majorcat::SeededStream& rng, int n, std::uint32_t grain) {
  std::vector<majorcat::BigInt> w(static_cast<std::size_t>(n));
  majorcat::BigInt total = 0;
  for (auto& x : w) {
    x = 1 + rng.next_u32() % grain;
    total += x;
  }
  std::vector<majorcat::Rational> e;
  for (const auto& x : w) e.emplace_back(x, total);
  return majorcat::make_vector<majorcat::Rational>(e);
}

/// Uniform on the simplex (flat Dirichlet).
inline majorcat::FloatVector random_simplex(majorcat::SeededStream& rng, int n) {
  std::vector<double> e(static_cast<std::size_t>(n));
  double total = 0.0;
  for (auto& x : e) {
    x = -std::log(1.0 - rng.uniform());
    total += x;
  }
  for (auto& x : e) x /= total;
  return majorcat::make_vector<double>(e);
}

}  // namespace oracle
