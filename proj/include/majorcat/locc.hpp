#pragma once

#include <cmath>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "majorcat/schmidt_vector.hpp"
#include "majorcat/seeded_stream.hpp"

namespace majorcat {

/// Forward: alpha -> beta only. Backward: beta -> alpha only.
/// Equivalent: both. Incomparable: neither.
enum class ConversionVerdict { Forward, Backward, Equivalent, Incomparable };

constexpr std::string_view to_string(ConversionVerdict v) {
  switch (v) {
    case ConversionVerdict::Forward: return "Forward";
    case ConversionVerdict::Backward: return "Backward";
    case ConversionVerdict::Equivalent: return "Equivalent";
    case ConversionVerdict::Incomparable: return "Incomparable";
  }
  return "?";
}

/// True iff alpha -> beta under LOCC, i.e. every prefix sum of alpha is at
/// most the matching prefix sum of beta. Shorter vectors are zero-padded.
/// Float mode forgives deficits below 1e-12.
template <SchmidtScalar Scalar>
bool majorizes(const SchmidtVector<Scalar>& alpha, const SchmidtVector<Scalar>& beta) {
  const Eigen::Index n = std::max(alpha.size(), beta.size());
  Scalar sa(0), sb(0);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (k < alpha.size()) sa += alpha[k];
    if (k < beta.size()) sb += beta[k];
    if constexpr (is_exact_v<Scalar>) {
      if (sa > sb) return false;
    } else {
      if (sa > sb + kMajorizationSlack) return false;
    }
  }
  return true;
}

template <SchmidtScalar Scalar>
ConversionVerdict verdict(const SchmidtVector<Scalar>& alpha, const SchmidtVector<Scalar>& beta) {
  const bool forward = majorizes(alpha, beta);
  const bool backward = majorizes(beta, alpha);
  if (forward && backward) return ConversionVerdict::Equivalent;
  if (forward) return ConversionVerdict::Forward;
  if (backward) return ConversionVerdict::Backward;
  return ConversionVerdict::Incomparable;
}

template <SchmidtScalar Scalar>
struct CatalysisReport {
  SchmidtVector<Scalar> source;
  SchmidtVector<Scalar> target;
  SchmidtVector<Scalar> catalyst;
  unsigned copies = 1;
  ConversionVerdict direct_verdict = ConversionVerdict::Incomparable;
  bool catalyzed = false;

  /// Catalysis in the strict sense: the pair is otherwise incomparable.
  bool kappa_access() const { return catalyzed && direct_verdict == ConversionVerdict::Incomparable; }
};

/// Tests alpha (x) kappa^N -> beta (x) kappa^N.
template <SchmidtScalar Scalar>
CatalysisReport<Scalar> is_catalyst(const SchmidtVector<Scalar>& alpha, const SchmidtVector<Scalar>& beta,
                                    const SchmidtVector<Scalar>& kappa, unsigned copies = 1) {
  if (copies < 1) fail(ErrorCode::PreconditionFailed, "catalyst copies must be at least 1");
  const auto attached = tensor_power(kappa, copies);
  const bool catalyzed = majorizes(tensor(alpha, attached), tensor(beta, attached));
  return {alpha, beta, kappa, copies, verdict(alpha, beta), catalyzed};
}

/// Smallest N in 1..n_max with alpha (x) alpha^N -> beta (x) alpha^N, or
/// nullopt. The pair must be incomparable.
template <SchmidtScalar Scalar>
std::optional<unsigned> min_self_catalysis_copies(const SchmidtVector<Scalar>& alpha,
                                                  const SchmidtVector<Scalar>& beta, unsigned n_max) {
  if (n_max < 1) fail(ErrorCode::PreconditionFailed, "max copies must be at least 1");
  if (const auto v = verdict(alpha, beta); v != ConversionVerdict::Incomparable) {
    fail(ErrorCode::NotIncomparable, "pair is " + std::string(to_string(v)) + ", not incomparable");
  }
  auto power = alpha;
  for (unsigned n = 1; n <= n_max; ++n) {
    if (majorizes(tensor(alpha, power), tensor(beta, power))) return n;
    if (n < n_max) power = tensor(power, alpha);
  }
  return std::nullopt;
}

/// Grows both vectors by one entry: the last entry of alpha gives up eps to
/// a new trailing entry, likewise beta with eps_prime (eps_prime = 0 just pads).
/// The caller re-checks whatever verdicts it needs.
template <SchmidtScalar Scalar>
std::pair<SchmidtVector<Scalar>, SchmidtVector<Scalar>> extend_dimension(const SchmidtVector<Scalar>& alpha,
                                                                        const SchmidtVector<Scalar>& beta,
                                                                        const Scalar& eps,
                                                                        const Scalar& eps_prime) {
  if (!(eps > 0)) fail(ErrorCode::PreconditionFailed, "eps must be positive");
  if (eps_prime < 0) fail(ErrorCode::PreconditionFailed, "eps' must be non-negative");
  if (eps >= alpha.back()) fail(ErrorCode::EpsilonTooLarge, "eps must be below alpha's last entry");
  if (eps_prime > 0 && eps_prime >= beta.back()) {
    fail(ErrorCode::EpsilonTooLarge, "eps' must be below beta's last entry");
  }
  auto grow = [](const SchmidtVector<Scalar>& v, const Scalar& e) {
    std::vector<Scalar> entries(v.coeffs().data(), v.coeffs().data() + v.size());
    entries.back() -= e;
    entries.push_back(e);
    return make_vector<Scalar>(entries);
  };
  return {grow(alpha, eps), grow(beta, eps_prime)};
}

/// Adds uniform noise in [-eps, eps] to each entry, clamps at zero,
/// renormalizes and re-sorts. Draws whose renormalized result strays more
/// than 2*eps (sup norm) from `a` are redrawn.
template <SchmidtScalar Scalar>
SchmidtVector<Scalar> perturb(const SchmidtVector<Scalar>& a, double eps, SeededStream& rng) {
  if constexpr (is_exact_v<Scalar>) {
    fail(ErrorCode::ExactModeUnsupported, "perturb works on float vectors only");
  } else {
    if (!(eps >= 0.0)) fail(ErrorCode::PreconditionFailed, "eps must be non-negative");
    if (eps == 0.0) return a;
    constexpr int kMaxDraws = 1000;
    std::vector<double> noisy(static_cast<std::size_t>(a.size()));
    for (int draw = 0; draw < kMaxDraws; ++draw) {
      double total = 0.0;
      for (Eigen::Index i = 0; i < a.size(); ++i) {
        noisy[i] = std::max(0.0, a[i] + rng.uniform(-eps, eps));
        total += noisy[i];
      }
      if (total <= 0.0) continue;
      for (auto& x : noisy) x /= total;
      auto result = make_vector<double>(noisy);
      if ((result.coeffs() - a.coeffs()).cwiseAbs().maxCoeff() <= 2.0 * eps) return result;
    }
    fail(ErrorCode::PreconditionFailed, "perturbation could not stay within 2*eps");
  }
}

}  // namespace majorcat
