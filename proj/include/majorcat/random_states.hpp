#pragma once

#include <cstdint>

#include "majorcat/locc.hpp"
#include "majorcat/schmidt_vector.hpp"
#include "majorcat/seeded_stream.hpp"

namespace majorcat {

/// Schmidt vector of a Haar-random pure state on C^n (x) C^n: squared
/// singular values of an n x n standard complex Gaussian matrix, normalized
/// and sorted.
FloatVector haar_schmidt(int n, SeededStream& rng);

/// Exact mean normalized entanglement entropy of a Haar-random state on
/// C^d (x) C^d: (1/ln d) [ sum_{k=d+1}^{d^2} 1/k - (d-1)/(2d) ].
double page_entropy(int d);

struct PairSample {
  FloatVector alpha;
  FloatVector beta;
  std::uint64_t rejections = 0;  // comparable pairs discarded before this one
};

/// Independent Haar pair, no conditioning.
PairSample sample_pair(int n, SeededStream& rng);

/// Redraws Haar pairs until they are incomparable. `max_rejections` bounds the
/// number of pair draws, so 0 fails immediately with RejectionBudgetExhausted.
PairSample sample_incomparable_pair(int n, SeededStream& rng, std::uint64_t max_rejections);

}  // namespace majorcat
