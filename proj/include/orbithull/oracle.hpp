#pragma once

// Independent verifiers: a Frank–Wolfe search over convex combinations of
// unitary conjugates, the textbook vector majorization test, and seeded
// generators of test pairs. None of these use the closed-form distance.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "orbithull/algebra.hpp"

namespace orbithull {

struct FrankWolfeResult {
  /// Smallest ‖a − x‖ (operator norm) over every iterate x visited. Each x is
  /// an explicit convex combination of conjugates u b u*, so this is an upper
  /// bound on the hull distance.
  double distance = 0.0;
  /// ‖a − x‖_F at the final iterate of the best restart.
  double frobenius_residual = 0.0;
  /// Frank–Wolfe duality gap at termination; f(x) − min f ≤ gap.
  double gap = 0.0;
  int restarts_run = 0;
  int iterations_run = 0;
  /// The Frobenius problem was solved to the gap tolerance, so further
  /// restarts could not change the answer.
  bool certified = false;
};

/// Minimizes ½‖a − Σ t_i u_i b u_i*‖_F² by Frank–Wolfe with a fully
/// corrective weight step. The linear subproblem over the orbit of b is
/// solved exactly by pairing the eigenvalues of the gradient with those of b
/// in opposite order. Restart 0 starts from the conjugate of b aligned with a;
/// later restarts start from Haar-random conjugates.
FrankWolfeResult frank_wolfe(const Algebra& alg, const HermitianElement& a,
                             const HermitianElement& b, int iterations, int restarts,
                             std::uint64_t seed);

double frank_wolfe_distance(const Algebra& alg, const HermitianElement& a,
                            const HermitianElement& b, int iterations, int restarts,
                            std::uint64_t seed);

/// Sorts both vectors non-increasing; true iff every partial sum of alpha is
/// at most that of beta and the totals agree, all within 1e−9. Throws
/// LengthMismatch.
bool diagonal_majorization_oracle(std::vector<double> alpha, std::vector<double> beta);

enum class PairKind { Majorizing, Submajorizing, Random, Boundary };

PairKind parse_pair_kind(const std::string& name);
const char* to_string(PairKind kind);

struct GeneratedPair {
  HermitianElement a;
  HermitianElement b;
};

/// Deterministic in (alg, seed, kind, radius). b is always a Haar-rotated
/// selfadjoint contraction.
///   Majorizing:    a = Σ t_i u_i b u_i*.
///   Submajorizing: a = Σ t_i d_i b d_i* with contractions d_i.
///   Random:        a independent of b.
///   Boundary:      a majorizing pair shifted by ±radius·1, which sits at
///                  hull distance exactly radius.
GeneratedPair generate_pair(const Algebra& alg, std::uint64_t seed, PairKind kind,
                            double radius = 0.3);

}  // namespace orbithull
