#pragma once

#include <vector>

#include "orbithull/algebra.hpp"

namespace orbithull {

inline constexpr double kJacobiTol = 1e-12;
inline constexpr int kJacobiSweeps = 30;

/// Eigen-decomposition of one Hermitian block: block = vectors·diag(values)·vectors*.
/// `values` is non-increasing; ties keep the order in which Jacobi produced them.
struct EigenSystem {
  RealVector values;
  Matrix vectors;
};

/// Cyclic Jacobi rotations. Throws NoConvergence if the off-diagonal mass has
/// not dropped below tol·‖block‖_F within kJacobiSweeps sweeps.
EigenSystem eig_hermitian(const Matrix& block, double tol = kJacobiTol);

/// Same rotations without accumulating eigenvectors.
RealVector eigenvalues_hermitian(const Matrix& block, double tol = kJacobiTol);

/// Continuous piecewise-linear function R → R given by knots x_0 < ... < x_k,
/// the values at the knots and the slopes of the two unbounded pieces.
class PiecewiseLinear {
 public:
  PiecewiseLinear(std::vector<double> knots, std::vector<double> values, double left_slope,
                  double right_slope);

  static PiecewiseLinear identity();
  /// s ↦ (s − t)_+
  static PiecewiseLinear positive_part(double t = 0.0);
  /// s ↦ max(−s, 0)
  static PiecewiseLinear negative_part();
  /// s ↦ min(s, c)
  static PiecewiseLinear min_with(double c);
  /// s ↦ s + c
  static PiecewiseLinear shift(double c);
  /// s ↦ (s − r)_+ − (s + r)_−
  static PiecewiseLinear soft_threshold(double r);

  double operator()(double s) const;

  /// outer ∘ inner, again piecewise linear.
  friend PiecewiseLinear compose(const PiecewiseLinear& outer, const PiecewiseLinear& inner);

  const std::vector<double>& knots() const { return knots_; }

 private:
  std::vector<double> knots_;
  std::vector<double> values_;
  double left_slope_;
  double right_slope_;
};

PiecewiseLinear compose(const PiecewiseLinear& outer, const PiecewiseLinear& inner);

/// Per-block eigen-decompositions of a selfadjoint element.
struct SpectralDecomposition {
  std::vector<EigenSystem> blocks;
};

SpectralDecomposition decompose(const HermitianElement& x, double tol = kJacobiTol);

/// Σ_j V_j diag(f(λ_j)) V_j* from a stored decomposition.
HermitianElement reassemble(const SpectralDecomposition& dec, const PiecewiseLinear& f);

HermitianElement functional_calculus(const HermitianElement& x, const PiecewiseLinear& f);

HermitianElement positive_part(const HermitianElement& x);
HermitianElement negative_part(const HermitianElement& x);

/// Sorted (non-increasing) eigenvalues of each block.
struct SpectrumProfile {
  std::vector<std::vector<double>> blocks;

  int num_blocks() const { return static_cast<int>(blocks.size()); }
  const std::vector<double>& block(int j) const { return blocks[static_cast<std::size_t>(j)]; }
  /// max |λ| over all blocks, i.e. the operator norm.
  double norm() const;
  double max_value() const;
  double min_value() const;
  SpectrumProfile negated() const;
  SpectrumProfile shifted(double s) const;
  SpectrumProfile positive_part() const;
  SpectrumProfile negative_part() const;
};

SpectrumProfile spectrum_profile(const HermitianElement& x);
SpectrumProfile spectrum_profile(const SpectralDecomposition& dec);

double operator_norm(const HermitianElement& x);

}  // namespace orbithull
