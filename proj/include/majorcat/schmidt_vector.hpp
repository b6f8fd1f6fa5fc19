#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "majorcat/error.hpp"
#include "majorcat/scalar.hpp"

namespace majorcat {

/// Ordered Schmidt vector: squared Schmidt coefficients, non-increasing,
/// non-negative, summing to one.
///
/// Storage is 0-based. Operations whose mathematics is 1-based (`tail`,
/// minimizer indices) take and return 1-based indices and say so.
template <SchmidtScalar Scalar_>
class SchmidtVector {
 public:
  using Scalar = Scalar_;
  using Coeffs = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  /// Trusted construction: `coeffs` must already be sorted non-increasing,
  /// non-negative and normalized. Validating callers go through make_vector.
  static SchmidtVector from_sorted_unchecked(Coeffs coeffs) { return SchmidtVector(std::move(coeffs)); }

  Eigen::Index size() const { return coeffs_.size(); }
  const Scalar& operator[](Eigen::Index i) const { return coeffs_[i]; }
  const Coeffs& coeffs() const { return coeffs_; }
  const Scalar& front() const { return coeffs_[0]; }
  const Scalar& back() const { return coeffs_[coeffs_.size() - 1]; }

  Scalar sum() const {
    Scalar s(0);
    for (Eigen::Index i = 0; i < size(); ++i) s += coeffs_[i];
    return s;
  }

  friend bool operator==(const SchmidtVector& a, const SchmidtVector& b) {
    return a.size() == b.size() &&
           std::equal(a.coeffs_.data(), a.coeffs_.data() + a.size(), b.coeffs_.data());
  }

 private:
  explicit SchmidtVector(Coeffs coeffs) : coeffs_(std::move(coeffs)) {}

  Coeffs coeffs_;
};

using FloatVector = SchmidtVector<double>;
using ExactVector = SchmidtVector<Rational>;

namespace detail {

template <class Scalar>
void sort_descending(Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& v) {
  std::sort(v.data(), v.data() + v.size(), std::greater<Scalar>{});
}

template <class Scalar>
bool is_negligible(const Scalar& x) {
  if constexpr (is_exact_v<Scalar>) {
    return x == 0;
  } else {
    return x <= kZeroThreshold;
  }
}

}  // namespace detail

/// Validates, normalizes (Float mode only) and sorts.
template <SchmidtScalar Scalar>
SchmidtVector<Scalar> make_vector(std::span<const Scalar> entries) {
  if (entries.empty()) fail(ErrorCode::EmptyInput, "Schmidt vector needs at least one entry");
  typename SchmidtVector<Scalar>::Coeffs c(static_cast<Eigen::Index>(entries.size()));
  Scalar total(0);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i] < 0) fail(ErrorCode::NegativeEntry, "entry " + std::to_string(i) + " is negative");
    c[static_cast<Eigen::Index>(i)] = entries[i];
    total += entries[i];
  }
  if constexpr (is_exact_v<Scalar>) {
    if (total != 1) fail(ErrorCode::BadNormalization, "entries sum to " + format_scalar(total));
  } else {
    if (!(std::abs(total - 1.0) <= kNormalizationTolerance)) {
      fail(ErrorCode::BadNormalization, "entries sum to " + format_scalar(total));
    }
    c /= total;
  }
  detail::sort_descending(c);
  return SchmidtVector<Scalar>::from_sorted_unchecked(std::move(c));
}

template <SchmidtScalar Scalar>
SchmidtVector<Scalar> make_vector(std::initializer_list<Scalar> entries) {
  return make_vector<Scalar>(std::span<const Scalar>(entries.begin(), entries.size()));
}

template <SchmidtScalar Scalar>
SchmidtVector<Scalar> make_vector(const std::vector<Scalar>& entries) {
  return make_vector<Scalar>(std::span<const Scalar>(entries));
}

/// Comma-separated decimal or "p/q" tokens, whitespace allowed around tokens.
template <SchmidtScalar Scalar>
SchmidtVector<Scalar> parse_vector(std::string_view text) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    fail(ErrorCode::EmptyInput, "empty vector text");
  }
  std::vector<Scalar> entries;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    entries.push_back(parse_scalar<Scalar>(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return make_vector<Scalar>(entries);
}

template <SchmidtScalar Scalar>
std::string format_vector(const SchmidtVector<Scalar>& a) {
  std::string out;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (i) out += ',';
    out += format_scalar(a[i]);
  }
  return out;
}

/// All pairwise products, sorted non-increasing.
template <SchmidtScalar Scalar>
SchmidtVector<Scalar> tensor(const SchmidtVector<Scalar>& a, const SchmidtVector<Scalar>& b) {
  typename SchmidtVector<Scalar>::Coeffs c(a.size() * b.size());
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    for (Eigen::Index j = 0; j < b.size(); ++j) c[k++] = a[i] * b[j];
  }
  detail::sort_descending(c);
  return SchmidtVector<Scalar>::from_sorted_unchecked(std::move(c));
}

template <SchmidtScalar Scalar>
SchmidtVector<Scalar> unit_vector() {
  typename SchmidtVector<Scalar>::Coeffs one(1);
  one[0] = Scalar(1);
  return SchmidtVector<Scalar>::from_sorted_unchecked(std::move(one));
}

/// n-fold tensor power; n = 0 gives (1).
template <SchmidtScalar Scalar>
SchmidtVector<Scalar> tensor_power(const SchmidtVector<Scalar>& a, unsigned n) {
  auto result = unit_vector<Scalar>();
  for (unsigned i = 0; i < n; ++i) result = tensor(result, a);
  return result;
}

template <SchmidtScalar Scalar>
typename SchmidtVector<Scalar>::Coeffs partial_sums(const SchmidtVector<Scalar>& a) {
  typename SchmidtVector<Scalar>::Coeffs s(a.size());
  Scalar running(0);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    running += a[i];
    s[i] = running;
  }
  return s;
}

/// All tails at once: result[k-1] = E_k(a) = 1 - sum_{l<k} a_l, with E_1 = 1.
///
/// Float mode accumulates from the back so that small tails keep their
/// relative precision.
template <SchmidtScalar Scalar>
typename SchmidtVector<Scalar>::Coeffs tails(const SchmidtVector<Scalar>& a) {
  const Eigen::Index n = a.size();
  typename SchmidtVector<Scalar>::Coeffs e(n);
  e[0] = Scalar(1);
  if constexpr (is_exact_v<Scalar>) {
    Scalar prefix(0);
    for (Eigen::Index k = 1; k < n; ++k) {
      prefix += a[k - 1];
      e[k] = Scalar(1) - prefix;
    }
  } else {
    Scalar suffix(0);
    for (Eigen::Index k = n - 1; k >= 1; --k) {
      suffix += a[k];
      e[k] = suffix;
    }
  }
  return e;
}

/// E_k(a) for 1-based k.
template <SchmidtScalar Scalar>
Scalar tail(const SchmidtVector<Scalar>& a, Eigen::Index k) {
  if (k < 1 || k > a.size()) {
    fail(ErrorCode::IndexOutOfRange,
         "tail index " + std::to_string(k) + " outside 1.." + std::to_string(a.size()));
  }
  if (k == 1) return Scalar(1);
  if constexpr (is_exact_v<Scalar>) {
    Scalar prefix(0);
    for (Eigen::Index l = 0; l < k - 1; ++l) prefix += a[l];
    return Scalar(1) - prefix;
  } else {
    Scalar suffix(0);
    for (Eigen::Index l = a.size() - 1; l >= k - 1; --l) suffix += a[l];
    return suffix;
  }
}

/// Shannon entropy over ln(len), in double precision whatever the mode.
template <SchmidtScalar Scalar>
double normalized_entropy(const SchmidtVector<Scalar>& a) {
  if (a.size() < 2) fail(ErrorCode::DimensionTooSmall, "entropy needs at least two entries");
  double h = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double p = to_double(a[i]);
    if (p > 0.0) h -= p * std::log(p);
  }
  return h / std::log(static_cast<double>(a.size()));
}

/// Drops trailing zeros (Float: entries <= 1e-15). Never drops the leading entry.
template <SchmidtScalar Scalar>
SchmidtVector<Scalar> trim_zeros(const SchmidtVector<Scalar>& a) {
  Eigen::Index n = a.size();
  while (n > 1 && detail::is_negligible(a[n - 1])) --n;
  if (n == a.size()) return a;
  return SchmidtVector<Scalar>::from_sorted_unchecked(a.coeffs().head(n));
}

template <SchmidtScalar Scalar>
SchmidtVector<Scalar> pad(const SchmidtVector<Scalar>& a, Eigen::Index n) {
  if (n < a.size()) {
    fail(ErrorCode::PreconditionFailed,
         "cannot pad length " + std::to_string(a.size()) + " down to " + std::to_string(n));
  }
  typename SchmidtVector<Scalar>::Coeffs c(n);
  c.head(a.size()) = a.coeffs();
  for (Eigen::Index i = a.size(); i < n; ++i) c[i] = Scalar(0);
  return SchmidtVector<Scalar>::from_sorted_unchecked(std::move(c));
}

/// Number of entries left after trim_zeros.
template <SchmidtScalar Scalar>
Eigen::Index effective_rank(const SchmidtVector<Scalar>& a) {
  Eigen::Index n = a.size();
  while (n > 1 && detail::is_negligible(a[n - 1])) --n;
  return n;
}

inline FloatVector to_float(const ExactVector& a) {
  FloatVector::Coeffs c(a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) c[i] = to_double(a[i]);
  c /= c.sum();
  return FloatVector::from_sorted_unchecked(std::move(c));
}

/// Exact rational image of a float vector: every double is converted
/// exactly, then the vector is divided by its exact sum.
inline ExactVector to_exact(const FloatVector& a) {
  ExactVector::Coeffs c(a.size());
  Rational total(0);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    c[i] = Rational(a[i]);
    total += c[i];
  }
  for (Eigen::Index i = 0; i < a.size(); ++i) c[i] /= total;
  return ExactVector::from_sorted_unchecked(std::move(c));
}

}  // namespace majorcat
