#pragma once

// Finite-dimensional multi-matrix algebras M_{n_1} ⊕ ... ⊕ M_{n_m}, their
// selfadjoint elements, block traces and the center-valued trace.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "orbithull/error.hpp"

namespace orbithull {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Relative tolerance used by every inequality check unless overridden.
inline constexpr double kDefaultRelTol = 1e-9;

// Relative Hermitian tolerance applied by HermitianElement::embed.
inline constexpr double kHermitianTol = 1e-8;

class Algebra {
 public:
  /// Validates the block sizes. Throws EmptyAlgebra or BadDimension.
  static Algebra build(std::vector<int> block_dims);

  int num_blocks() const { return static_cast<int>(dims_.size()); }
  int block_dim(int j) const { return dims_[static_cast<std::size_t>(j)]; }
  const std::vector<int>& block_dims() const { return dims_; }

  /// Σ n_j², the complex dimension of the algebra.
  int total_dimension() const;
  /// Σ n_j, the size of the block-diagonal matrices representing elements.
  int matrix_size() const;

  bool operator==(const Algebra&) const = default;

 private:
  explicit Algebra(std::vector<int> dims) : dims_(std::move(dims)) {}
  std::vector<int> dims_;
};

/// One scalar per block: an element of the center, identified with R^m.
struct CentralElement {
  std::vector<double> values;

  bool operator==(const CentralElement&) const = default;
};

/// τ(x) = Σ_j w_j Tr_j(x_j).
struct TraceWeights {
  std::vector<double> weights;

  bool operator==(const TraceWeights&) const = default;
};

/// Block-diagonal matrix with no symmetry assumption (unitaries, contractions).
using BlockMatrix = std::vector<Matrix>;

BlockMatrix identity_blocks(const Algebra& alg);
BlockMatrix adjoint(const BlockMatrix& u);
BlockMatrix multiply(const BlockMatrix& x, const BlockMatrix& y);
/// max_j ‖u_j* u_j − 1‖ (spectral norm, bounded above by Frobenius).
double unitarity_defect(const BlockMatrix& u);

class HermitianElement {
 public:
  /// Empty element with no blocks; a placeholder until assigned.
  HermitianElement() = default;

  /// Checks shapes against `alg`, rejects blocks whose anti-Hermitian part
  /// exceeds kHermitianTol·max(1, max |entry|), and symmetrizes the rest.
  static HermitianElement embed(const Algebra& alg, std::vector<Matrix> raw);

  /// Symmetrizes without a tolerance check. For values produced internally.
  static HermitianElement from_blocks(std::vector<Matrix> blocks);

  static HermitianElement zero(const Algebra& alg);
  static HermitianElement scalar(const Algebra& alg, double s);
  static HermitianElement central(const Algebra& alg, const CentralElement& lambda);
  /// Block j is diag(diagonals[j]).
  static HermitianElement diagonal(const std::vector<std::vector<double>>& diagonals);

  Algebra algebra() const;
  int num_blocks() const { return static_cast<int>(blocks_.size()); }
  const Matrix& block(int j) const { return blocks_[static_cast<std::size_t>(j)]; }
  const std::vector<Matrix>& blocks() const { return blocks_; }

  /// u x u* for a block-diagonal u of matching shape.
  HermitianElement conjugated(const BlockMatrix& u) const;

  /// x + s·1
  HermitianElement shifted(double s) const;

  HermitianElement operator+(const HermitianElement& other) const;
  HermitianElement operator-(const HermitianElement& other) const;
  HermitianElement operator-() const;
  HermitianElement operator*(double s) const;

  double max_abs_entry() const;
  /// Frobenius norm over all blocks.
  double frobenius_norm() const;

 private:
  explicit HermitianElement(std::vector<Matrix> blocks) : blocks_(std::move(blocks)) {}
  std::vector<Matrix> blocks_;
};

inline HermitianElement operator*(double s, const HermitianElement& x) { return x * s; }

/// Throws ShapeMismatch unless x lives in alg.
void require_shape(const Algebra& alg, const HermitianElement& x);
void require_shape(const Algebra& alg, const BlockMatrix& x);

/// The block traces e_1..e_m; every bounded trace is a nonnegative combination.
std::vector<TraceWeights> extremal_traces(const Algebra& alg);

double evaluate_trace(const TraceWeights& tr, const HermitianElement& x);

/// E(x)_j = Tr(x_j)/n_j.
CentralElement center_valued_trace(const Algebra& alg, const HermitianElement& x);

}  // namespace orbithull
