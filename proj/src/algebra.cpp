#include "orbithull/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace orbithull {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyAlgebra: return "EmptyAlgebra";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::NotContraction: return "NotContraction";
    case ErrorCode::NotMajorized: return "NotMajorized";
    case ErrorCode::NotDoublyStochastic: return "NotDoublyStochastic";
    case ErrorCode::DecompositionStall: return "DecompositionStall";
    case ErrorCode::EpsilonTooSmall: return "EpsilonTooSmall";
    case ErrorCode::RankOverflow: return "RankOverflow";
    case ErrorCode::BadEpsilon: return "BadEpsilon";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Algebra Algebra::build(std::vector<int> block_dims) {
  if (block_dims.empty()) throw Error(ErrorCode::EmptyAlgebra, "no blocks given");
  for (int n : block_dims) {
    if (n < 1) throw Error(ErrorCode::BadDimension, "block dimension " + std::to_string(n));
  }
  return Algebra(std::move(block_dims));
}

int Algebra::total_dimension() const {
  int total = 0;
  for (int n : dims_) total += n * n;
  return total;
}

int Algebra::matrix_size() const {
  int total = 0;
  for (int n : dims_) total += n;
  return total;
}

BlockMatrix identity_blocks(const Algebra& alg) {
  BlockMatrix out;
  out.reserve(static_cast<std::size_t>(alg.num_blocks()));
  for (int n : alg.block_dims()) out.push_back(Matrix::Identity(n, n));
  return out;
}

BlockMatrix adjoint(const BlockMatrix& u) {
  BlockMatrix out;
  out.reserve(u.size());
  for (const auto& blk : u) out.push_back(blk.adjoint());
  return out;
}

BlockMatrix multiply(const BlockMatrix& x, const BlockMatrix& y) {
  if (x.size() != y.size()) throw Error(ErrorCode::ShapeMismatch, "block count differs");
  BlockMatrix out;
  out.reserve(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j].cols() != y[j].rows()) throw Error(ErrorCode::ShapeMismatch, "block size differs");
    out.push_back(x[j] * y[j]);
  }
  return out;
}

double unitarity_defect(const BlockMatrix& u) {
  double worst = 0.0;
  for (const auto& blk : u) {
    const Matrix d = blk.adjoint() * blk - Matrix::Identity(blk.cols(), blk.cols());
    // 2-norm via the largest singular value; blocks are small.
    const double norm = d.size() == 0 ? 0.0 : Eigen::JacobiSVD<Matrix>(d).singularValues()(0);
    worst = std::max(worst, norm);
  }
  return worst;
}

namespace {

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

HermitianElement HermitianElement::embed(const Algebra& alg, std::vector<Matrix> raw) {
  if (static_cast<int>(raw.size()) != alg.num_blocks()) {
    throw Error(ErrorCode::ShapeMismatch, "expected " + std::to_string(alg.num_blocks()) +
                                              " blocks, got " + std::to_string(raw.size()));
  }
  for (int j = 0; j < alg.num_blocks(); ++j) {
    const Matrix& m = raw[static_cast<std::size_t>(j)];
    const int n = alg.block_dim(j);
    if (m.rows() != n || m.cols() != n) {
      throw Error(ErrorCode::ShapeMismatch, "block " + std::to_string(j) + " is not " +
                                                std::to_string(n) + "x" + std::to_string(n));
    }
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double skew = (0.5 * (m - m.adjoint())).cwiseAbs().maxCoeff();
    if (!(skew <= kHermitianTol * scale)) {
      throw Error(ErrorCode::NotHermitian, "block " + std::to_string(j) +
                                               " has anti-Hermitian part " + std::to_string(skew));
    }
  }
  return from_blocks(std::move(raw));
}

HermitianElement HermitianElement::from_blocks(std::vector<Matrix> blocks) {
  for (auto& m : blocks) m = hermitian_part(m);
  return HermitianElement(std::move(blocks));
}

HermitianElement HermitianElement::zero(const Algebra& alg) { return scalar(alg, 0.0); }

HermitianElement HermitianElement::scalar(const Algebra& alg, double s) {
  std::vector<Matrix> blocks;
  for (int n : alg.block_dims()) blocks.push_back(Matrix::Identity(n, n) * s);
  return HermitianElement(std::move(blocks));
}

HermitianElement HermitianElement::central(const Algebra& alg, const CentralElement& lambda) {
  if (static_cast<int>(lambda.values.size()) != alg.num_blocks()) {
    throw Error(ErrorCode::ShapeMismatch, "central element length differs from block count");
  }
  std::vector<Matrix> blocks;
  for (int j = 0; j < alg.num_blocks(); ++j) {
    const int n = alg.block_dim(j);
    blocks.push_back(Matrix::Identity(n, n) * lambda.values[static_cast<std::size_t>(j)]);
  }
  return HermitianElement(std::move(blocks));
}

HermitianElement HermitianElement::diagonal(const std::vector<std::vector<double>>& diagonals) {
  std::vector<Matrix> blocks;
  for (const auto& d : diagonals) {
    const auto n = static_cast<Eigen::Index>(d.size());
    Matrix m = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = d[static_cast<std::size_t>(i)];
    blocks.push_back(std::move(m));
  }
  return HermitianElement(std::move(blocks));
}

Algebra HermitianElement::algebra() const {
  std::vector<int> dims;
  for (const auto& m : blocks_) dims.push_back(static_cast<int>(m.rows()));
  return Algebra::build(std::move(dims));
}

HermitianElement HermitianElement::conjugated(const BlockMatrix& u) const {
  if (u.size() != blocks_.size()) throw Error(ErrorCode::ShapeMismatch, "block count differs");
  std::vector<Matrix> out;
  out.reserve(blocks_.size());
  for (std::size_t j = 0; j < blocks_.size(); ++j) {
    if (u[j].cols() != blocks_[j].rows()) {
      throw Error(ErrorCode::ShapeMismatch, "conjugating block has the wrong size");
    }
    out.push_back(u[j] * blocks_[j] * u[j].adjoint());
  }
  return from_blocks(std::move(out));
}

HermitianElement HermitianElement::shifted(double s) const {
  std::vector<Matrix> out = blocks_;
  for (auto& m : out) m.diagonal().array() += s;
  return HermitianElement(std::move(out));
}

namespace {

void check_same(const std::vector<Matrix>& x, const std::vector<Matrix>& y) {
  if (x.size() != y.size()) throw Error(ErrorCode::ShapeMismatch, "block count differs");
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j].rows() != y[j].rows()) throw Error(ErrorCode::ShapeMismatch, "block size differs");
  }
}

}  // namespace

HermitianElement HermitianElement::operator+(const HermitianElement& other) const {
  check_same(blocks_, other.blocks_);
  std::vector<Matrix> out = blocks_;
  for (std::size_t j = 0; j < out.size(); ++j) out[j] += other.blocks_[j];
  return HermitianElement(std::move(out));
}

HermitianElement HermitianElement::operator-(const HermitianElement& other) const {
  check_same(blocks_, other.blocks_);
  std::vector<Matrix> out = blocks_;
  for (std::size_t j = 0; j < out.size(); ++j) out[j] -= other.blocks_[j];
  return HermitianElement(std::move(out));
}

HermitianElement HermitianElement::operator-() const { return *this * -1.0; }

HermitianElement HermitianElement::operator*(double s) const {
  std::vector<Matrix> out = blocks_;
  for (auto& m : out) m *= s;
  return HermitianElement(std::move(out));
}

double HermitianElement::max_abs_entry() const {
  double worst = 0.0;
  for (const auto& m : blocks_) worst = std::max(worst, m.cwiseAbs().maxCoeff());
  return worst;
}

double HermitianElement::frobenius_norm() const {
  double sq = 0.0;
  for (const auto& m : blocks_) sq += m.squaredNorm();
  return std::sqrt(sq);
}

void require_shape(const Algebra& alg, const HermitianElement& x) {
  if (x.num_blocks() != alg.num_blocks()) {
    throw Error(ErrorCode::ShapeMismatch, "element has " + std::to_string(x.num_blocks()) +
                                              " blocks, algebra has " +
                                              std::to_string(alg.num_blocks()));
  }
  for (int j = 0; j < alg.num_blocks(); ++j) {
    if (x.block(j).rows() != alg.block_dim(j)) {
      throw Error(ErrorCode::ShapeMismatch, "block " + std::to_string(j) + " size differs");
    }
  }
}

void require_shape(const Algebra& alg, const BlockMatrix& x) {
  if (static_cast<int>(x.size()) != alg.num_blocks()) {
    throw Error(ErrorCode::ShapeMismatch, "block count differs");
  }
  for (int j = 0; j < alg.num_blocks(); ++j) {
    const auto& m = x[static_cast<std::size_t>(j)];
    if (m.rows() != alg.block_dim(j) || m.cols() != alg.block_dim(j)) {
      throw Error(ErrorCode::ShapeMismatch, "block " + std::to_string(j) + " size differs");
    }
  }
}

std::vector<TraceWeights> extremal_traces(const Algebra& alg) {
  const auto m = static_cast<std::size_t>(alg.num_blocks());
  std::vector<TraceWeights> out(m, TraceWeights{std::vector<double>(m, 0.0)});
  for (std::size_t j = 0; j < m; ++j) out[j].weights[j] = 1.0;
  return out;
}

double evaluate_trace(const TraceWeights& tr, const HermitianElement& x) {
  if (tr.weights.size() != static_cast<std::size_t>(x.num_blocks())) {
    throw Error(ErrorCode::ShapeMismatch, "trace weights and element differ in block count");
  }
  double total = 0.0;
  for (int j = 0; j < x.num_blocks(); ++j) {
    total += tr.weights[static_cast<std::size_t>(j)] * x.block(j).diagonal().real().sum();
  }
  return total;
}

CentralElement center_valued_trace(const Algebra& alg, const HermitianElement& x) {
  require_shape(alg, x);
  CentralElement out;
  for (int j = 0; j < alg.num_blocks(); ++j) {
    // Running mean: exact on scalar blocks, so E(λ·1) = λ bit for bit.
    double mean = 0.0;
    const Matrix& blk = x.block(j);
    for (Eigen::Index i = 0; i < blk.rows(); ++i) {
      mean += (blk(i, i).real() - mean) / static_cast<double>(i + 1);
    }
    out.values.push_back(mean);
  }
  return out;
}

}  // namespace orbithull
