#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "majorcat/schmidt_vector.hpp"

namespace majorcat {

// Index convention for this header: the conversion mathematics is 1-based
// (E_1, ..., E_n; minimizer indices l with 1 < l < n; the sentinel n+1).
// `beta_at(b, m)` is the only place 1-based indices touch 0-based storage.

namespace detail {

template <class Scalar>
const Scalar& beta_at(const SchmidtVector<Scalar>& b, Eigen::Index m) {
  return b[m - 1];
}

/// alpha and beta trimmed and brought to alpha's rank; false when beta's
/// rank exceeds alpha's.
template <class Scalar>
bool aligned_pair(const SchmidtVector<Scalar>& alpha, const SchmidtVector<Scalar>& beta,
                  SchmidtVector<Scalar>& a, SchmidtVector<Scalar>& b) {
  a = trim_zeros(alpha);
  b = trim_zeros(beta);
  if (b.size() > a.size()) return false;
  b = pad(b, a.size());
  return true;
}

template <class Scalar>
bool approx_equal_rel(const Scalar& x, const Scalar& y) {
  if constexpr (is_exact_v<Scalar>) {
    return x == y;
  } else {
    return std::abs(x - y) <= kMinimizerRelTolerance * std::max(std::abs(x), std::abs(y));
  }
}

}  // namespace detail

/// Optimal SLOCC conversion probability, min_k E_k(alpha) / E_k(beta).
///
/// Both vectors are trimmed; if beta has larger rank the answer is 0.
/// Terms with E_k(beta) = 0 are skipped.
template <SchmidtScalar Scalar>
Scalar vidal_probability(const SchmidtVector<Scalar>& alpha, const SchmidtVector<Scalar>& beta) {
  auto a = alpha;
  auto b = beta;
  if (!detail::aligned_pair(alpha, beta, a, b)) return Scalar(0);
  const auto ea = tails(a);
  const auto eb = tails(b);
  Scalar best(1);  // k = 1 term
  for (Eigen::Index k = 1; k < a.size(); ++k) {
    if (!(eb[k] > 0)) continue;
    Scalar ratio = ea[k] / eb[k];
    if (ratio < best) best = std::move(ratio);
  }
  return best;
}

/// P_S(alpha (x) alpha^N -> beta (x) alpha^N).
template <SchmidtScalar Scalar>
Scalar multi_copy_probability(const SchmidtVector<Scalar>& alpha, const SchmidtVector<Scalar>& beta,
                              unsigned copies) {
  const auto attached = tensor_power(alpha, copies);
  return vidal_probability(tensor(alpha, attached), tensor(beta, attached));
}

/// multi_copy_probability for N = 0..max_copies, reusing each power.
template <SchmidtScalar Scalar>
std::vector<Scalar> multi_copy_curve(const SchmidtVector<Scalar>& alpha, const SchmidtVector<Scalar>& beta,
                                     unsigned max_copies) {
  std::vector<Scalar> curve;
  auto attached = unit_vector<Scalar>();
  for (unsigned n = 0; n <= max_copies; ++n) {
    curve.push_back(vidal_probability(tensor(alpha, attached), tensor(beta, attached)));
    if (n < max_copies) attached = tensor(attached, alpha);
  }
  return curve;
}

/// min{alpha_n / beta_n, 1} at alpha's effective rank n. A zero-padded beta
/// has beta_n = 0 and the ceiling is 1.
template <SchmidtScalar Scalar>
Scalar ceiling(const SchmidtVector<Scalar>& alpha, const SchmidtVector<Scalar>& beta) {
  auto a = alpha;
  auto b = beta;
  if (!detail::aligned_pair(alpha, beta, a, b)) {
    fail(ErrorCode::RankMismatch, "beta has larger Schmidt rank than alpha; probability is 0");
  }
  if (!(b.back() > 0)) return Scalar(1);
  Scalar ratio = a.back() / b.back();
  return ratio < 1 ? ratio : Scalar(1);
}

/// Whether some catalyst raises the conversion probability.
template <SchmidtScalar Scalar>
bool can_improve(const SchmidtVector<Scalar>& alpha, const SchmidtVector<Scalar>& beta) {
  const Scalar cap = ceiling(alpha, beta);
  return vidal_probability(alpha, beta) < cap;
}

/// L = { l : 1 < l < n, E_l(alpha)/E_l(beta) = P_S }, 1-based, ascending.
/// Float mode matches within relative 1e-10.
template <SchmidtScalar Scalar>
std::vector<Eigen::Index> minimizer_set(const SchmidtVector<Scalar>& alpha, const SchmidtVector<Scalar>& beta) {
  if (!can_improve(alpha, beta)) {
    fail(ErrorCode::PreconditionFailed, "conversion probability already sits at its ceiling");
  }
  auto a = alpha;
  auto b = beta;
  detail::aligned_pair(alpha, beta, a, b);
  const Scalar p = vidal_probability(a, b);
  const auto ea = tails(a);
  const auto eb = tails(b);
  std::vector<Eigen::Index> minimizers;
  for (Eigen::Index l = 2; l < a.size(); ++l) {
    if (!(eb[l - 1] > 0)) continue;
    if (detail::approx_equal_rel(Scalar(ea[l - 1] / eb[l - 1]), p)) minimizers.push_back(l);
  }
  return minimizers;
}

template <SchmidtScalar Scalar>
struct SloccReport {
  Scalar p_direct;
  std::vector<Eigen::Index> minimizer_set;  // empty unless improvable
  Scalar ceiling;
  bool improvable = false;
};

template <SchmidtScalar Scalar>
SloccReport<Scalar> slocc_report(const SchmidtVector<Scalar>& alpha, const SchmidtVector<Scalar>& beta) {
  SloccReport<Scalar> r{vidal_probability(alpha, beta), {}, ceiling(alpha, beta), false};
  r.improvable = r.p_direct < r.ceiling;
  if (r.improvable) r.minimizer_set = minimizer_set(alpha, beta);
  return r;
}

/// Necessary and sufficient test for kappa to raise P_S(alpha -> beta).
///
/// Every non-increasing tuple r_1 >= ... >= r_k drawn from L and the sentinel
/// n+1, with r_k != n+1, must admit some j < i with
///   kappa_i / kappa_j < beta_{r_j} / beta_{r_i - 1}     (void if r_j = n+1)
/// or
///   kappa_i / kappa_j > beta_{r_j - 1} / beta_{r_i}     (void if r_i = n+1).
/// A tuple describes a candidate set of smallest entries of beta (x) kappa
/// (row i keeps beta_{r_i..n}); the inequalities say that set is not a
/// genuine tail, so the minimum ratio cannot be attained again.
///
/// Requires can_improve(alpha, beta) and equal effective ranks.
template <SchmidtScalar Scalar>
bool feng_is_catalyst(const SchmidtVector<Scalar>& alpha, const SchmidtVector<Scalar>& beta,
                      const SchmidtVector<Scalar>& kappa) {
  if (effective_rank(alpha) != effective_rank(beta)) {
    fail(ErrorCode::PreconditionFailed, "catalyst criterion needs alpha and beta of equal rank");
  }
  const auto minimizers = minimizer_set(alpha, beta);  // checks can_improve
  const auto b = trim_zeros(beta);
  const auto c = trim_zeros(kappa);
  const Eigen::Index n = b.size();
  const Eigen::Index k = c.size();
  const Eigen::Index sentinel = n + 1;

  std::vector<Eigen::Index> symbols(minimizers.begin(), minimizers.end());
  symbols.push_back(sentinel);

  // Products avoid division; every entry involved is positive.
  auto witnessed = [&](const std::vector<Eigen::Index>& r) {
    for (Eigen::Index i = 1; i < k; ++i) {
      for (Eigen::Index j = 0; j < i; ++j) {
        const Eigen::Index ri = r[i];
        const Eigen::Index rj = r[j];
        if (rj != sentinel &&
            c[i] * detail::beta_at(b, ri - 1) < c[j] * detail::beta_at(b, rj)) {
          return true;
        }
        if (ri != sentinel &&
            c[i] * detail::beta_at(b, ri) > c[j] * detail::beta_at(b, rj - 1)) {
          return true;
        }
      }
    }
    return false;
  };

  // Non-increasing tuples over `symbols` (ascending), position by position.
  std::vector<Eigen::Index> r(static_cast<std::size_t>(k));
  std::function<bool(Eigen::Index, std::size_t)> all_witnessed = [&](Eigen::Index pos, std::size_t top) {
    if (pos == k) return r[k - 1] == sentinel || witnessed(r);
    for (std::size_t s = 0; s <= top; ++s) {
      r[pos] = symbols[s];
      if (!all_witnessed(pos + 1, s)) return false;
    }
    return true;
  };
  return all_witnessed(0, symbols.size() - 1);
}

/// The single-copy self-catalysis criterion: kappa = alpha.
template <SchmidtScalar Scalar>
bool is_prob_self_catalyst(const SchmidtVector<Scalar>& alpha, const SchmidtVector<Scalar>& beta) {
  return feng_is_catalyst(alpha, beta, alpha);
}

/// Brute force: attach kappa and recompute. Float mode demands a relative
/// gain above 1e-10.
template <SchmidtScalar Scalar>
bool oracle_is_prob_catalyst(const SchmidtVector<Scalar>& alpha, const SchmidtVector<Scalar>& beta,
                             const SchmidtVector<Scalar>& kappa) {
  const Scalar direct = vidal_probability(alpha, beta);
  const Scalar assisted = vidal_probability(tensor(alpha, kappa), tensor(beta, kappa));
  if constexpr (is_exact_v<Scalar>) {
    return assisted > direct;
  } else {
    return assisted > direct * (1.0 + kMinimizerRelTolerance);
  }
}

}  // namespace majorcat
