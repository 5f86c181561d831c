#include "orbithull/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace orbithull {

namespace {

double off_diagonal_norm(const Matrix& a) {
  double sq = 0.0;
  for (Eigen::Index q = 0; q < a.cols(); ++q) {
    for (Eigen::Index p = 0; p < q; ++p) sq += 2.0 * std::norm(a(p, q));
  }
  return std::sqrt(sq);
}

// Runs cyclic sweeps on `a` in place; accumulates rotations into `v` if given.
void jacobi_sweeps(Matrix& a, Matrix* v, double tol) {
  const Eigen::Index n = a.rows();
  const double scale = a.norm();
  if (n < 2 || scale == 0.0) return;
  const double target = tol * scale;

  for (int sweep = 0; sweep < kJacobiSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= target) return;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double g = std::abs(apq);
        if (g == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        if (g <= 1e-18 * (std::abs(app) + std::abs(aqq))) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        // Phase e^{iφ} of a_pq; the rotation acts on the real 2x2 problem
        // [[app, g], [g, aqq]] after rescaling column q by e^{-iφ}.
        const Complex phase = apq / g;
        const double theta = (aqq - app) / (2.0 * g);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex u_pp = c;
        const Complex u_pq = s;
        const Complex u_qp = -s * std::conj(phase);
        const Complex u_qq = c * std::conj(phase);

        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * u_pp + akq * u_qp;
          a(k, q) = akp * u_pq + akq * u_qq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(u_pp) * apk + std::conj(u_qp) * aqk;
          a(q, k) = std::conj(u_pq) * apk + std::conj(u_qq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        if (v != nullptr) {
          Matrix& vv = *v;
          for (Eigen::Index k = 0; k < n; ++k) {
            const Complex vkp = vv(k, p);
            const Complex vkq = vv(k, q);
            vv(k, p) = vkp * u_pp + vkq * u_qp;
            vv(k, q) = vkp * u_pq + vkq * u_qq;
          }
        }
      }
    }
  }
  if (off_diagonal_norm(a) > target) {
    throw Error(ErrorCode::NoConvergence,
                "Jacobi did not converge in " + std::to_string(kJacobiSweeps) + " sweeps");
  }
}

std::vector<Eigen::Index> descending_order(const Matrix& diag_source) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(diag_source.rows()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return diag_source(i, i).real() > diag_source(j, j).real();
  });
  return order;
}

}  // namespace

EigenSystem eig_hermitian(const Matrix& block, double tol) {
  if (block.rows() != block.cols()) throw Error(ErrorCode::ShapeMismatch, "block is not square");
  Matrix a = 0.5 * (block + block.adjoint());
  Matrix v = Matrix::Identity(a.rows(), a.cols());
  jacobi_sweeps(a, &v, tol);
  const auto order = descending_order(a);
  EigenSystem out{RealVector(a.rows()), Matrix(a.rows(), a.cols())};
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    out.values(k) = a(order[i], order[i]).real();
    out.vectors.col(k) = v.col(order[i]);
  }
  return out;
}

RealVector eigenvalues_hermitian(const Matrix& block, double tol) {
  if (block.rows() != block.cols()) throw Error(ErrorCode::ShapeMismatch, "block is not square");
  Matrix a = 0.5 * (block + block.adjoint());
  jacobi_sweeps(a, nullptr, tol);
  const auto order = descending_order(a);
  RealVector out(a.rows());
  for (std::size_t i = 0; i < order.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = a(order[i], order[i]).real();
  }
  return out;
}

PiecewiseLinear::PiecewiseLinear(std::vector<double> knots, std::vector<double> values,
                                 double left_slope, double right_slope)
    : knots_(std::move(knots)),
      values_(std::move(values)),
      left_slope_(left_slope),
      right_slope_(right_slope) {
  if (knots_.empty() || knots_.size() != values_.size()) {
    throw Error(ErrorCode::InvalidArgument, "piecewise-linear function needs matching knots");
  }
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    if (!(knots_[i] > knots_[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "knots must be strictly increasing");
    }
  }
}

PiecewiseLinear PiecewiseLinear::identity() { return {{0.0}, {0.0}, 1.0, 1.0}; }
PiecewiseLinear PiecewiseLinear::positive_part(double t) { return {{t}, {0.0}, 0.0, 1.0}; }
PiecewiseLinear PiecewiseLinear::negative_part() { return {{0.0}, {0.0}, -1.0, 0.0}; }
PiecewiseLinear PiecewiseLinear::min_with(double c) { return {{c}, {c}, 1.0, 0.0}; }
PiecewiseLinear PiecewiseLinear::shift(double c) { return {{0.0}, {c}, 1.0, 1.0}; }

PiecewiseLinear PiecewiseLinear::soft_threshold(double r) {
  if (r <= 0.0) return identity();
  return {{-r, r}, {0.0, 0.0}, 1.0, 1.0};
}

double PiecewiseLinear::operator()(double s) const {
  if (s <= knots_.front()) return values_.front() + left_slope_ * (s - knots_.front());
  if (s >= knots_.back()) return values_.back() + right_slope_ * (s - knots_.back());
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), s);
  const auto hi = static_cast<std::size_t>(it - knots_.begin());
  const std::size_t lo = hi - 1;
  const double w = (s - knots_[lo]) / (knots_[hi] - knots_[lo]);
  return values_[lo] + w * (values_[hi] - values_[lo]);
}

PiecewiseLinear compose(const PiecewiseLinear& outer, const PiecewiseLinear& inner) {
  std::vector<double> knots = inner.knots_;
  const auto& xs = inner.knots_;
  const auto& ys = inner.values_;
  // Preimages of the outer knots under each linear piece of the inner function.
  for (double z : outer.knots_) {
    if (inner.left_slope_ != 0.0) {
      const double x = xs.front() + (z - ys.front()) / inner.left_slope_;
      if (x < xs.front()) knots.push_back(x);
    }
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      const double dy = ys[i + 1] - ys[i];
      if (dy == 0.0) continue;
      const double w = (z - ys[i]) / dy;
      if (w > 0.0 && w < 1.0) knots.push_back(xs[i] + w * (xs[i + 1] - xs[i]));
    }
    if (inner.right_slope_ != 0.0) {
      const double x = xs.back() + (z - ys.back()) / inner.right_slope_;
      if (x > xs.back()) knots.push_back(x);
    }
  }
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  std::vector<double> values;
  values.reserve(knots.size());
  for (double x : knots) values.push_back(outer(inner(x)));

  auto end_slope = [&](double inner_slope, bool left) {
    if (inner_slope == 0.0) return 0.0;
    // Direction in which the inner function runs off as x → ∓∞.
    const bool goes_up = left ? inner_slope < 0.0 : inner_slope > 0.0;
    return inner_slope * (goes_up ? outer.right_slope_ : outer.left_slope_);
  };
  return PiecewiseLinear(std::move(knots), std::move(values), end_slope(inner.left_slope_, true),
                         end_slope(inner.right_slope_, false));
}

SpectralDecomposition decompose(const HermitianElement& x, double tol) {
  SpectralDecomposition dec;
  dec.blocks.reserve(static_cast<std::size_t>(x.num_blocks()));
  for (const auto& blk : x.blocks()) dec.blocks.push_back(eig_hermitian(blk, tol));
  return dec;
}

HermitianElement reassemble(const SpectralDecomposition& dec, const PiecewiseLinear& f) {
  std::vector<Matrix> blocks;
  blocks.reserve(dec.blocks.size());
  for (const auto& es : dec.blocks) {
    RealVector fv = es.values.unaryExpr([&](double s) { return f(s); });
    blocks.push_back(es.vectors * fv.cast<Complex>().asDiagonal() * es.vectors.adjoint());
  }
  return HermitianElement::from_blocks(std::move(blocks));
}

HermitianElement functional_calculus(const HermitianElement& x, const PiecewiseLinear& f) {
  return reassemble(decompose(x), f);
}

HermitianElement positive_part(const HermitianElement& x) {
  return functional_calculus(x, PiecewiseLinear::positive_part());
}

HermitianElement negative_part(const HermitianElement& x) {
  return functional_calculus(x, PiecewiseLinear::negative_part());
}

double SpectrumProfile::norm() const {
  double worst = 0.0;
  for (const auto& b : blocks) {
    if (!b.empty()) worst = std::max({worst, std::abs(b.front()), std::abs(b.back())});
  }
  return worst;
}

double SpectrumProfile::max_value() const {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& b : blocks) {
    if (!b.empty()) best = std::max(best, b.front());
  }
  return best;
}

double SpectrumProfile::min_value() const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& b : blocks) {
    if (!b.empty()) best = std::min(best, b.back());
  }
  return best;
}

SpectrumProfile SpectrumProfile::negated() const {
  SpectrumProfile out{blocks};
  for (auto& b : out.blocks) {
    std::reverse(b.begin(), b.end());
    for (double& v : b) v = -v;
  }
  return out;
}

SpectrumProfile SpectrumProfile::shifted(double s) const {
  SpectrumProfile out{blocks};
  for (auto& b : out.blocks) {
    for (double& v : b) v += s;
  }
  return out;
}

SpectrumProfile SpectrumProfile::positive_part() const {
  SpectrumProfile out{blocks};
  for (auto& b : out.blocks) {
    for (double& v : b) v = std::max(v, 0.0);
  }
  return out;
}

SpectrumProfile SpectrumProfile::negative_part() const { return negated().positive_part(); }

SpectrumProfile spectrum_profile(const HermitianElement& x) {
  SpectrumProfile out;
  for (const auto& blk : x.blocks()) {
    const RealVector v = eigenvalues_hermitian(blk);
    out.blocks.emplace_back(v.data(), v.data() + v.size());
  }
  return out;
}

SpectrumProfile spectrum_profile(const SpectralDecomposition& dec) {
  SpectrumProfile out;
  for (const auto& es : dec.blocks) {
    out.blocks.emplace_back(es.values.data(), es.values.data() + es.values.size());
  }
  return out;
}

double operator_norm(const HermitianElement& x) { return spectrum_profile(x).norm(); }

}  // namespace orbithull
