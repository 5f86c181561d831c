#pragma once

// Shared helpers for the test binaries: element generators and brute-force
// oracles that never call the closed-form distance code.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "orbithull/algebra.hpp"
#include "orbithull/random.hpp"
#include "orbithull/spectral.hpp"

namespace testing_support {

using namespace orbithull;

inline std::vector<double> sorted_desc(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

// Spectrum in [-1, 1]; mode 0 continuous, 1 drawn from a 5-point set (ties),
// 2 continuous with about a third of the entries zeroed.
inline std::vector<double> random_spectrum(int n, Rng& rng, int mode) {
  static const double kLevels[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
  std::vector<double> s(static_cast<std::size_t>(n));
  for (double& x : s) {
    if (mode == 1) {
      x = kLevels[rng.below(5)];
    } else {
      x = rng.uniform(-1.0, 1.0);
      if (mode == 2 && rng.uniform() < 0.35) x = 0.0;
    }
  }
  return s;
}

inline HermitianElement element_with_spectra(const std::vector<std::vector<double>>& spectra, Rng& rng) {
  std::vector<Matrix> blocks;
  for (const auto& s : spectra) {
    const int n = static_cast<int>(s.size());
    const Matrix u = random_unitary(n, rng);
    RealVector d = Eigen::Map<const RealVector>(s.data(), n);
    blocks.push_back(u * d.cast<Complex>().asDiagonal() * u.adjoint());
  }
  return HermitianElement::from_blocks(std::move(blocks));
}

inline HermitianElement random_element(const Algebra& alg, Rng& rng, int mode = -1) {
  std::vector<std::vector<double>> spectra;
  for (int n : alg.block_dims()) spectra.push_back(random_spectrum(n, rng, mode < 0 ? rng.below(3) : mode));
  return element_with_spectra(spectra, rng);
}

inline Algebra random_algebra(Rng& rng, int max_blocks = 3, int max_dim = 4) {
  std::vector<int> dims(static_cast<std::size_t>(1 + rng.below(max_blocks)));
  for (int& n : dims) n = 1 + rng.below(max_dim);
  return Algebra::build(dims);
}

inline double plus(double x) { return x > 0.0 ? x : 0.0; }

// Σ_i (s_i − t)_+ straight from the definition.
inline double tail(const std::vector<double>& s, double t) {
  double acc = 0.0;
  for (double x : s) acc += plus(x - t);
  return acc;
}

// Tracial inequalities of the distance theorem for one block at radius r,
// checked at every kink plus one point below all of them; t_min restricts
// the thresholds (−∞ for the unitary version, 0 for the contraction version).
inline bool distance_conditions_hold(const std::vector<double>& a, const std::vector<double>& b, double r,
                                     bool all_t, double slack) {
  auto family = [&](const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> ts;
    for (double v : x) ts.push_back(v - r);
    for (double v : y) ts.push_back(v);
    double lowest = *std::min_element(ts.begin(), ts.end()) - 1.0;
    ts.push_back(lowest);
    if (!all_t) {
      for (double& t : ts) t = std::max(t, 0.0);
      ts.push_back(0.0);
    }
    for (double t : ts) {
      if (tail(x, t + r) > tail(y, t) + slack) return false;
    }
    return true;
  };
  std::vector<double> na;
  std::vector<double> nb;
  for (double v : a) na.push_back(-v);
  for (double v : b) nb.push_back(-v);
  return family(a, b) && family(na, nb);
}

// Least r satisfying the conditions, by bisection.
inline double bisection_distance(const std::vector<double>& a, const std::vector<double>& b, bool all_t) {
  double hi = 0.0;
  for (double v : a) hi = std::max(hi, std::abs(v));
  for (double v : b) hi = std::max(hi, std::abs(v));
  hi = 2.0 * hi + 1.0;
  double lo = 0.0;
  if (distance_conditions_hold(a, b, 0.0, all_t, 1e-13)) return 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (distance_conditions_hold(a, b, mid, all_t, 1e-13)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

// Textbook vector majorization: sorted partial sums plus equal totals.
inline bool partial_sum_majorized(std::vector<double> a, std::vector<double> b, double tol) {
  a = sorted_desc(std::move(a));
  b = sorted_desc(std::move(b));
  double sa = 0.0;
  double sb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sa += a[i];
    sb += b[i];
    if (sa > sb + tol) return false;
  }
  return std::abs(sa - sb) <= tol;
}

// Weak (sub)majorization of sorted partial sums, no total condition.
inline bool partial_sum_weak(std::vector<double> a, std::vector<double> b, double tol) {
  a = sorted_desc(std::move(a));
  b = sorted_desc(std::move(b));
  double sa = 0.0;
  double sb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sa += a[i];
    sb += b[i];
    if (sa > sb + tol) return false;
  }
  return true;
}

inline std::vector<double> eigenvalues(const Matrix& m) {
  const RealVector v = eigenvalues_hermitian(m);
  return {v.data(), v.data() + v.size()};
}

// Operator norm via Eigen's own solver, independent of the Jacobi code.
inline double reference_norm(const HermitianElement& x) {
  double worst = 0.0;
  for (const auto& b : x.blocks()) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(b, Eigen::EigenvaluesOnly);
    worst = std::max(worst, es.eigenvalues().cwiseAbs().maxCoeff());
  }
  return worst;
}

inline double scale_of(const HermitianElement& a, const HermitianElement& b) {
  return std::max({1.0, reference_norm(a), reference_norm(b)});
}

// True when x is the double nearest to (mu·p + nu·q)/(p + q), computed in
// exact rational arithmetic (ties either way accepted).
inline bool is_nearest_weighted_mean(double x, double mu, int p, double nu, int q) {
  using boost::multiprecision::cpp_rational;
  const cpp_rational exact =
      (cpp_rational(mu) * p + cpp_rational(nu) * q) / cpp_rational(p + q);
  const cpp_rational err = abs(cpp_rational(x) - exact);
  const double up = std::nextafter(x, INFINITY);
  const double down = std::nextafter(x, -INFINITY);
  return err <= abs(cpp_rational(up) - exact) && err <= abs(cpp_rational(down) - exact);
}

}  // namespace testing_support
