#include "majorcat/random_states.hpp"

#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Eigenvalues>

namespace majorcat {

FloatVector haar_schmidt(int n, SeededStream& rng) {
  if (n < 2) fail(ErrorCode::DimensionTooSmall, "Haar sampling needs n >= 2, got " + std::to_string(n));
  Eigen::MatrixXcd g(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = std::complex<double>(re, im);
    }
  }
  const Eigen::MatrixXcd w = g * g.adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(w, Eigen::EigenvaluesOnly);
  Eigen::VectorXd lambda = solver.eigenvalues();
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda[i] < 0.0) {
      if (lambda[i] < -1e-12 * w.trace().real()) {
        fail(ErrorCode::PreconditionFailed, "Gram matrix has a negative eigenvalue");
      }
      lambda[i] = 0.0;
    }
  }
  lambda /= lambda.sum();
  return make_vector<double>(std::span<const double>(lambda.data(), static_cast<std::size_t>(lambda.size())));
}

double page_entropy(int d) {
  if (d < 2) fail(ErrorCode::DimensionTooSmall, "Page entropy needs d >= 2, got " + std::to_string(d));
  double harmonic = 0.0;
  for (long k = d + 1; k <= static_cast<long>(d) * d; ++k) harmonic += 1.0 / static_cast<double>(k);
  return (harmonic - (d - 1.0) / (2.0 * d)) / std::log(static_cast<double>(d));
}

PairSample sample_pair(int n, SeededStream& rng) {
  auto alpha = haar_schmidt(n, rng);
  auto beta = haar_schmidt(n, rng);
  return {std::move(alpha), std::move(beta), 0};
}

PairSample sample_incomparable_pair(int n, SeededStream& rng, std::uint64_t max_rejections) {
  for (std::uint64_t draw = 0; draw < max_rejections; ++draw) {
    auto pair = sample_pair(n, rng);
    if (verdict(pair.alpha, pair.beta) == ConversionVerdict::Incomparable) {
      pair.rejections = draw;
      return pair;
    }
  }
  fail(ErrorCode::RejectionBudgetExhausted,
       "no incomparable pair within " + std::to_string(max_rejections) + " draws at n=" + std::to_string(n));
}

}  // namespace majorcat
