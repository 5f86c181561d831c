#pragma once

// Explicit witnesses for hull membership: weights and block-diagonal
// unitaries u_i with a ≈ Σ t_i u_i b u_i*. Everything is reduced to spectra,
// transported by doubly stochastic matrices, and decomposed into permutations.

#include <vector>

#include "orbithull/algebra.hpp"
#include "orbithull/majorization.hpp"

namespace orbithull {

struct ConvexCombination {
  std::vector<double> weights;
  std::vector<BlockMatrix> unitaries;
  /// ‖a − Σ t_i u_i b u_i*‖, recomputed from the matrices.
  double target_error = 0.0;
  /// Number of distinct per-block terms before the weight lists were merged.
  std::vector<int> block_terms;

  int terms() const { return static_cast<int>(weights.size()); }
};

/// Σ t_i u_i b u_i*.
HermitianElement apply_combination(const ConvexCombination& cc, const HermitianElement& b);

/// Operator norm of a − Σ t_i u_i b u_i*.
double combination_error(const ConvexCombination& cc, const HermitianElement& a,
                         const HermitianElement& b);

/// Doubly stochastic D with D·beta = alpha, as a product of at most n − 1
/// T-transforms. Both inputs must be non-increasing. Throws NotMajorized.
RealMatrix hlp_transfer(const std::vector<double>& alpha, const std::vector<double>& beta);

/// A permutation as an index map: (P x)_i = x[perm[i]], i.e. P(i, perm[i]) = 1.
using Permutation = std::vector<int>;

struct BirkhoffTerm {
  double weight = 0.0;
  Permutation perm;
};

/// D = Σ w_k P_k with at most (n − 1)² + 1 terms. Throws NotDoublyStochastic
/// when a row/column sum or an entry is off by more than tol, and
/// DecompositionStall if no positive permutation remains before the mass is used up.
std::vector<BirkhoffTerm> birkhoff_decompose(const RealMatrix& d, double tol = 1e-10);

/// Non-increasing z ≺ beta with max_i |z_i − alpha_i| ≤ r, for r at least the
/// block distance. alpha and beta non-increasing and of equal length.
std::vector<double> project_to_majorized(const std::vector<double>& alpha,
                                         const std::vector<double>& beta, double r);

/// Combination within orbit_distance(a, b) + epsilon of a. Throws BadEpsilon
/// for epsilon ≤ 0 and EpsilonTooSmall below 1e−9·max(1, ‖a‖, ‖b‖).
ConvexCombination synthesize_combination(const Algebra& alg, const HermitianElement& a,
                                         const HermitianElement& b, double epsilon);

/// Rounds the weights to multiples of 1/copies (largest remainder), so the
/// result reads as (1/copies) Σ u_i b u_i* with repetitions. target_error is
/// recomputed against a and b.
ConvexCombination equalize_weights(const ConvexCombination& cc, int copies,
                                   const HermitianElement& a, const HermitianElement& b);

struct PinchResult {
  CentralElement rho;
  /// Indices of the blocks where p_j + q_j > 0; the certificate lives on
  /// M_{p_j+q_j} for these blocks, in that order.
  std::vector<int> blocks;
  std::vector<int> compressed_dims;
  /// μP + νQ and ρ(P + Q) on the compression, diagonal in the standard basis.
  HermitianElement source;
  HermitianElement target;
  ConvexCombination certificate;
};

/// ρ_j = (μ_j p_j + ν_j q_j)/(p_j + q_j), or μ_j when p_j + q_j = 0, with a
/// combination of unitary conjugates of μP + νQ approximating ρ(P + Q).
/// Throws RankOverflow, ShapeMismatch.
PinchResult dixmier_pinch(const Algebra& alg, const std::vector<int>& rank_p,
                          const std::vector<int>& rank_q, const CentralElement& mu,
                          const CentralElement& nu);

}  // namespace orbithull
