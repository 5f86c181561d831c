#pragma once

// Decision procedures and distance formulas for majorization (membership in
// the closed convex hull of unitary conjugates) and submajorization
// (contraction conjugates) of selfadjoint elements of a multi-matrix algebra.
//
// Every check reduces to the block traces e_j, which span the bounded traces;
// the tracial inequalities are piecewise linear in the threshold t with kinks
// only at eigenvalues, so they are evaluated exactly at those breakpoints.

#include <optional>
#include <string>
#include <vector>

#include "orbithull/algebra.hpp"
#include "orbithull/spectral.hpp"

namespace orbithull {

/// A failed tracial inequality τ_j(f(a)) ≤ τ_j(f(b)) + tol at threshold t.
/// family is "upper" for (x − t)_+ and "lower" for (−x − t)_+.
struct Violation {
  int block = 0;
  double t = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string family;
};

struct Verdict {
  bool holds = true;
  std::optional<Violation> violation;
  double tolerance = 0.0;

  explicit operator bool() const { return holds; }
};

/// Additive slack rel_tol·max(1, ‖a‖, ‖b‖).
double check_tolerance(const SpectrumProfile& a, const SpectrumProfile& b,
                       double rel_tol = kDefaultRelTol);

// ---- spectrum-level forms -------------------------------------------------

/// Σ_i (λ_i − t)_+ over one block.
double tail_trace(const std::vector<double>& spectrum, double t);

/// Tracial submajorization for all t ≥ 0 (positive profiles).
Verdict tracial_submajorize(const SpectrumProfile& a, const SpectrumProfile& b, double tol);
/// Both tracial families over all t ∈ R.
Verdict majorize(const SpectrumProfile& a, const SpectrumProfile& b, double tol);

/// Closed form of the hull distance for one block: the largest deficit of a
/// top-k or bottom-k partial sum divided by k (never negative).
double orbit_distance_block(const std::vector<double>& a, const std::vector<double>& b);
std::vector<double> orbit_distance_per_block(const SpectrumProfile& a, const SpectrumProfile& b);
double orbit_distance(const SpectrumProfile& a, const SpectrumProfile& b);

double submaj_distance(const SpectrumProfile& a, const SpectrumProfile& b);

// ---- element-level API ----------------------------------------------------

/// a ≺_T b for positive a, b. Throws NotPositive.
Verdict tracial_submajorize(const Algebra& alg, const HermitianElement& a,
                            const HermitianElement& b, double rel_tol = kDefaultRelTol);

/// a ≺_c b for selfadjoint a, b via a_+ ≺_T b_+ and a_− ≺_T b_−.
Verdict submajorize(const Algebra& alg, const HermitianElement& a, const HermitianElement& b,
                    double rel_tol = kDefaultRelTol);

/// a ≺_u b.
Verdict majorize(const Algebra& alg, const HermitianElement& a, const HermitianElement& b,
                 double rel_tol = kDefaultRelTol);

/// Distance from a to the closed convex hull of {u b u*}.
double orbit_distance(const Algebra& alg, const HermitianElement& a, const HermitianElement& b);

struct SubmajDistance {
  double distance = 0.0;
  /// (a − r)_+ − (a + r)_−, within r of a and submajorized by b.
  HermitianElement witness;
};

/// Distance from a to the convex hull of {d b d* : ‖d‖ ≤ 1}.
SubmajDistance submaj_distance(const Algebra& alg, const HermitianElement& a,
                               const HermitianElement& b);

struct ZeroInHullResult {
  bool holds = true;
  /// Empty when holds; otherwise "nonzero trace", "positive invertible quotient"
  /// or "negative invertible quotient".
  std::string reason;
  int block = -1;
};

/// Whether 0 lies in the closed convex hull of the unitary orbit of a.
ZeroInHullResult zero_in_hull(const Algebra& alg, const HermitianElement& a,
                              double rel_tol = kDefaultRelTol);

/// Joint decomposition a = Σ α_i P_i, b = Σ β_i Q_i with rank(P_i) = rank(Q_i)
/// in every block and coordinatewise non-increasing central coefficients.
struct CanonicalPair {
  Algebra algebra;
  int terms = 0;
  /// rank_profile[i][j] is the rank of P_i (and Q_i) in block j.
  std::vector<std::vector<int>> rank_profile;
  std::vector<CentralElement> alpha;
  std::vector<CentralElement> beta;

  /// Per-block spectra Σ α_i P_i and Σ β_i Q_i, non-increasing.
  std::pair<SpectrumProfile, SpectrumProfile> reassembled() const;
};

/// Relative tolerance for grouping equal eigenvalues into one term.
inline constexpr double kTieTol = 1e-10;

CanonicalPair canonical_pair(const Algebra& alg, const HermitianElement& a,
                             const HermitianElement& b);
CanonicalPair canonical_pair(const Algebra& alg, const SpectrumProfile& a,
                             const SpectrumProfile& b);

/// The two families of partial-sum inequalities in E(P_i) = rank/n_j that
/// certify a distance ≤ r between positive contractions. Throws NotContraction.
bool finite_conditions(const CanonicalPair& cp, double r, double rel_tol = kDefaultRelTol);

/// sp(a_j) ⊆ [min sp(b_j), max sp(b_j)] for every block.
bool spectrum_hull_check(const HermitianElement& a, const HermitianElement& b,
                         double rel_tol = kDefaultRelTol);

/// ‖π(a)‖ ≤ ‖π(b)‖ for every quotient π; blockwise top eigenvalues suffice.
bool quotient_norm_check(const Algebra& alg, const HermitianElement& a,
                         const HermitianElement& b, double rel_tol = kDefaultRelTol);

/// Throws NotPositive if some eigenvalue is below −1e−10·max(1, ‖x‖).
void require_positive(const SpectrumProfile& x, const char* name);

}  // namespace orbithull
