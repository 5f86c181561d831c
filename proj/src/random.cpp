#include "orbithull/random.hpp"

#include <cmath>

namespace orbithull {

namespace {

Matrix gaussian_matrix(int n, Rng& rng) {
  Matrix g(n, n);
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < n; ++r) g(r, c) = rng.complex_normal();
  }
  return g;
}

}  // namespace

Matrix random_unitary(int n, Rng& rng) {
  const Matrix g = gaussian_matrix(n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phases so the distribution is Haar rather than QR-biased.
  for (int k = 0; k < n; ++k) {
    const Complex d = r(k, k);
    const double m = std::abs(d);
    if (m > 0.0) q.col(k) *= d / m;
  }
  return q;
}

BlockMatrix random_unitary(const Algebra& alg, Rng& rng) {
  BlockMatrix out;
  for (int n : alg.block_dims()) out.push_back(random_unitary(n, rng));
  return out;
}

BlockMatrix random_contraction(const Algebra& alg, Rng& rng) {
  BlockMatrix out;
  for (int n : alg.block_dims()) {
    Matrix g = gaussian_matrix(n, rng);
    const double s = Eigen::JacobiSVD<Matrix>(g).singularValues()(0);
    const double scale = rng.uniform(0.2, 1.0);
    if (s > 0.0) g *= scale / s;
    out.push_back(std::move(g));
  }
  return out;
}

HermitianElement random_hermitian(const Algebra& alg, Rng& rng, double lo, double hi) {
  std::vector<Matrix> blocks;
  for (int n : alg.block_dims()) {
    RealVector lam(n);
    for (int i = 0; i < n; ++i) lam(i) = rng.uniform(lo, hi);
    const Matrix u = random_unitary(n, rng);
    blocks.push_back(u * lam.cast<Complex>().asDiagonal() * u.adjoint());
  }
  return HermitianElement::from_blocks(std::move(blocks));
}

std::vector<double> random_weights(int count, Rng& rng) {
  std::vector<double> w(static_cast<std::size_t>(count));
  double total = 0.0;
  for (double& x : w) {
    double u = rng.uniform();
    while (u == 0.0) u = rng.uniform();
    x = -std::log(u);
    total += x;
  }
  for (double& x : w) x /= total;
  return w;
}

}  // namespace orbithull
