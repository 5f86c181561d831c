#include "orbithull/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "orbithull/spectral.hpp"

namespace orbithull {

namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

void require_non_increasing(const std::vector<double>& v, double tol, const char* name) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[i - 1] + tol) {
      throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be non-increasing");
    }
  }
}

// Kuhn's augmenting-path matching on rows -> columns restricted to `allowed`.
// Returns match_of_row, or an empty vector when no perfect matching exists.
std::vector<int> perfect_matching(const std::vector<std::vector<char>>& allowed) {
  const int n = static_cast<int>(allowed.size());
  std::vector<int> row_of_col(static_cast<std::size_t>(n), -1);
  std::vector<char> seen;
  auto augment = [&](auto&& self, int row) -> bool {
    for (int c = 0; c < n; ++c) {
      if (!allowed[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)] ||
          seen[static_cast<std::size_t>(c)]) {
        continue;
      }
      seen[static_cast<std::size_t>(c)] = 1;
      const int other = row_of_col[static_cast<std::size_t>(c)];
      if (other < 0 || self(self, other)) {
        row_of_col[static_cast<std::size_t>(c)] = row;
        return true;
      }
    }
    return false;
  };
  for (int r = 0; r < n; ++r) {
    seen.assign(static_cast<std::size_t>(n), 0);
    if (!augment(augment, r)) return {};
  }
  std::vector<int> match(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) match[static_cast<std::size_t>(row_of_col[static_cast<std::size_t>(c)])] = c;
  return match;
}

// Permutation maximizing its smallest entry of r, or empty if r has no
// positive perfect matching.
std::vector<int> bottleneck_matching(const RealMatrix& r) {
  const auto n = static_cast<std::size_t>(r.rows());
  std::vector<double> values;
  for (Eigen::Index i = 0; i < r.rows(); ++i) {
    for (Eigen::Index j = 0; j < r.cols(); ++j) {
      if (r(i, j) > 0.0) values.push_back(r(i, j));
    }
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  auto matching_at = [&](double threshold) {
    std::vector<std::vector<char>> allowed(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        allowed[i][j] = r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) >= threshold;
      }
    }
    return perfect_matching(allowed);
  };

  if (values.empty()) return {};
  std::vector<int> best = matching_at(values.front());
  if (best.empty()) return {};
  std::size_t lo = 0;
  std::size_t hi = values.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi + 1) / 2;
    auto m = matching_at(values[mid]);
    if (m.empty()) {
      hi = mid - 1;
    } else {
      lo = mid;
      best = std::move(m);
    }
  }
  return best;
}

// Removes terms until the count is at most (n−1)²+1, keeping Σ w_k P_k fixed.
void caratheodory_reduce(std::vector<BirkhoffTerm>& terms, int n) {
  const std::size_t cap = static_cast<std::size_t>((n - 1) * (n - 1) + 1);
  while (terms.size() > cap) {
    const auto k = static_cast<Eigen::Index>(terms.size());
    RealMatrix m = RealMatrix::Zero(n * n + 1, k);
    for (Eigen::Index t = 0; t < k; ++t) {
      const auto& perm = terms[static_cast<std::size_t>(t)].perm;
      for (int i = 0; i < n; ++i) m(i * n + perm[static_cast<std::size_t>(i)], t) = 1.0;
      m(n * n, t) = 1.0;
    }
    const RealMatrix kernel = Eigen::FullPivLU<RealMatrix>(m).kernel();
    RealVector c = kernel.col(0);
    if (c.cwiseAbs().maxCoeff() == 0.0) return;
    if (c.maxCoeff() <= 0.0) c = -c;
    double theta = std::numeric_limits<double>::infinity();
    Eigen::Index drop = -1;
    for (Eigen::Index t = 0; t < k; ++t) {
      if (c(t) > 1e-12) {
        const double ratio = terms[static_cast<std::size_t>(t)].weight / c(t);
        if (ratio < theta) {
          theta = ratio;
          drop = t;
        }
      }
    }
    if (drop < 0) return;
    for (Eigen::Index t = 0; t < k; ++t) {
      auto& w = terms[static_cast<std::size_t>(t)].weight;
      w = std::max(0.0, w - theta * c(t));
    }
    terms[static_cast<std::size_t>(drop)].weight = 0.0;
    std::erase_if(terms, [](const BirkhoffTerm& t) { return t.weight <= 0.0; });
  }
}

Matrix permutation_matrix(const Permutation& perm) {
  const auto n = static_cast<Eigen::Index>(perm.size());
  Matrix p = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) p(i, perm[static_cast<std::size_t>(i)]) = 1.0;
  return p;
}

struct BlockCombination {
  std::vector<double> weights;
  std::vector<Matrix> unitaries;
};

// Common refinement of the cumulative weight partitions of each block.
ConvexCombination merge_blocks(const std::vector<BlockCombination>& parts) {
  std::vector<std::vector<double>> cumulative;
  std::vector<double> cuts;
  for (const auto& part : parts) {
    std::vector<double> cum(part.weights.size());
    std::partial_sum(part.weights.begin(), part.weights.end(), cum.begin());
    const double total = cum.back();
    for (double& c : cum) c /= total;
    cum.back() = 1.0;
    cuts.insert(cuts.end(), cum.begin(), cum.end() - 1);
    cumulative.push_back(std::move(cum));
  }
  cuts.push_back(0.0);
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double x, double y) { return std::abs(x - y) <= 1e-15; }),
             cuts.end());
  cuts.back() = 1.0;

  ConvexCombination out;
  for (std::size_t t = 0; t + 1 < cuts.size(); ++t) {
    const double w = cuts[t + 1] - cuts[t];
    if (w <= 0.0) continue;
    const double mid = 0.5 * (cuts[t] + cuts[t + 1]);
    BlockMatrix u;
    for (std::size_t j = 0; j < parts.size(); ++j) {
      const auto& cum = cumulative[j];
      auto idx = static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), mid) - cum.begin());
      idx = std::min(idx, cum.size() - 1);
      u.push_back(parts[j].unitaries[idx]);
    }
    out.weights.push_back(w);
    out.unitaries.push_back(std::move(u));
  }
  const double total = std::accumulate(out.weights.begin(), out.weights.end(), 0.0);
  for (double& w : out.weights) w /= total;
  for (const auto& part : parts) out.block_terms.push_back(static_cast<int>(part.weights.size()));
  return out;
}

double elements_scale(const SpectrumProfile& a, const SpectrumProfile& b) {
  return std::max({1.0, a.norm(), b.norm()});
}

// (μp + νq)/(p + q), rounded once: the numerator is carried as an exact
// double-double before the division is corrected.
double weighted_mean(double mu, int p, double nu, int q) {
  const double fp = p;
  const double fq = q;
  const double p1 = mu * fp;
  const double e1 = std::fma(mu, fp, -p1);
  const double p2 = nu * fq;
  const double e2 = std::fma(nu, fq, -p2);
  const double s = p1 + p2;
  const double bb = s - p1;
  const double e3 = (p1 - (s - bb)) + (p2 - bb);
  const double lo = e1 + e2 + e3;
  const double d = fp + fq;
  const double r0 = s / d;
  const double rem = std::fma(-r0, d, s) + lo;
  return r0 + rem / d;
}

}  // namespace

HermitianElement apply_combination(const ConvexCombination& cc, const HermitianElement& b) {
  if (cc.weights.size() != cc.unitaries.size()) {
    throw Error(ErrorCode::ShapeMismatch, "weights and unitaries differ in length");
  }
  std::vector<Matrix> acc;
  for (const auto& blk : b.blocks()) acc.push_back(Matrix::Zero(blk.rows(), blk.cols()));
  for (std::size_t k = 0; k < cc.weights.size(); ++k) {
    const auto& u = cc.unitaries[k];
    if (u.size() != acc.size()) throw Error(ErrorCode::ShapeMismatch, "unitary has wrong block count");
    for (std::size_t j = 0; j < acc.size(); ++j) {
      acc[j] += cc.weights[k] * (u[j] * b.blocks()[j] * u[j].adjoint());
    }
  }
  return HermitianElement::from_blocks(std::move(acc));
}

double combination_error(const ConvexCombination& cc, const HermitianElement& a,
                         const HermitianElement& b) {
  return operator_norm(a - apply_combination(cc, b));
}

RealMatrix hlp_transfer(const std::vector<double>& alpha, const std::vector<double>& beta) {
  if (alpha.size() != beta.size()) throw Error(ErrorCode::LengthMismatch, "alpha and beta differ in length");
  const auto n = alpha.size();
  const double scale = std::max({1.0, max_abs(alpha), max_abs(beta)});
  const double tol = 1e-9 * scale;
  require_non_increasing(alpha, tol, "alpha");
  require_non_increasing(beta, tol, "beta");

  double sa = 0.0;
  double sb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sa += alpha[i];
    sb += beta[i];
    if (sa > sb + tol) {
      throw Error(ErrorCode::NotMajorized, "partial sum " + std::to_string(i + 1) + " of alpha exceeds beta");
    }
  }
  if (std::abs(sa - sb) > tol) throw Error(ErrorCode::NotMajorized, "alpha and beta have different sums");

  const auto ni = static_cast<Eigen::Index>(n);
  RealMatrix d = RealMatrix::Identity(ni, ni);
  std::vector<double> c = beta;
  const double eps = 1e-14 * scale;
  for (std::size_t step = 0; step < 2 * n; ++step) {
    std::size_t k = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (c[i] < alpha[i] - eps) {
        k = i;
        break;
      }
    }
    if (k == n) break;
    std::size_t j = n;
    for (std::size_t i = k; i-- > 0;) {
      if (c[i] > alpha[i] + eps) {
        j = i;
        break;
      }
    }
    if (j == n) break;
    const double give = c[j] - alpha[j];
    const double need = alpha[k] - c[k];
    const double delta = std::min(give, need);
    const double mix = delta / (c[j] - c[k]);
    const auto jj = static_cast<Eigen::Index>(j);
    const auto kk = static_cast<Eigen::Index>(k);
    const RealVector row_j = d.row(jj);
    const RealVector row_k = d.row(kk);
    d.row(jj) = (1.0 - mix) * row_j + mix * row_k;
    d.row(kk) = mix * row_j + (1.0 - mix) * row_k;
    if (give <= need) {
      c[k] += give;
      c[j] = alpha[j];
    } else {
      c[j] -= need;
      c[k] = alpha[k];
    }
  }
  return d;
}

std::vector<BirkhoffTerm> birkhoff_decompose(const RealMatrix& d, double tol) {
  if (d.rows() != d.cols()) throw Error(ErrorCode::NotDoublyStochastic, "matrix is not square");
  const int n = static_cast<int>(d.rows());
  if (n == 0) throw Error(ErrorCode::NotDoublyStochastic, "empty matrix");
  if (d.minCoeff() < -tol) throw Error(ErrorCode::NotDoublyStochastic, "negative entry");
  for (int i = 0; i < n; ++i) {
    if (std::abs(d.row(i).sum() - 1.0) > tol || std::abs(d.col(i).sum() - 1.0) > tol) {
      throw Error(ErrorCode::NotDoublyStochastic, "row or column sum differs from 1");
    }
  }

  RealMatrix r = d.cwiseMax(0.0);
  std::vector<BirkhoffTerm> terms;
  double remaining = 1.0;
  for (int iter = 0; iter <= n * n; ++iter) {
    if (r.maxCoeff() <= tol) break;
    auto perm = bottleneck_matching(r);
    if (perm.empty()) {
      throw Error(ErrorCode::DecompositionStall,
                  "no positive permutation left with mass " + std::to_string(remaining));
    }
    double w = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) w = std::min(w, r(i, perm[static_cast<std::size_t>(i)]));
    for (int i = 0; i < n; ++i) {
      double& entry = r(i, perm[static_cast<std::size_t>(i)]);
      entry = entry - w <= 0.0 ? 0.0 : entry - w;
    }
    remaining -= w;
    terms.push_back({w, std::move(perm)});
  }
  if (r.maxCoeff() > tol) throw Error(ErrorCode::DecompositionStall, "residual did not vanish");
  caratheodory_reduce(terms, n);
  double total = 0.0;
  for (const auto& t : terms) total += t.weight;
  for (auto& t : terms) t.weight /= total;
  return terms;
}

std::vector<double> project_to_majorized(const std::vector<double>& alpha,
                                         const std::vector<double>& beta, double r) {
  if (alpha.size() != beta.size()) throw Error(ErrorCode::LengthMismatch, "alpha and beta differ in length");
  const std::size_t n = alpha.size();
  if (n == 0) return {};
  r = std::max(r, 0.0);

  // Prefix sums: X of the lower bounds α − r, B of beta.
  std::vector<double> lower_prefix(n + 1, 0.0);
  std::vector<double> beta_prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    lower_prefix[i + 1] = lower_prefix[i] + (alpha[i] - r);
    beta_prefix[i + 1] = beta_prefix[i] + beta[i];
  }
  // slack[k] = min_{j ≥ k} (B_j − X_j): the room left for later partial sums.
  std::vector<double> slack(n + 1);
  slack[n] = beta_prefix[n] - lower_prefix[n];
  for (std::size_t k = n; k-- > 1;) slack[k] = std::min(slack[k + 1], beta_prefix[k] - lower_prefix[k]);

  // Largest feasible partial sums, taken greedily.
  std::vector<double> path(n + 1, 0.0);
  for (std::size_t k = 1; k <= n; ++k) {
    path[k] = std::min(path[k - 1] + alpha[k - 1] + r, lower_prefix[k] + slack[k]);
  }
  path[n] = beta_prefix[n];

  // Least concave majorant of the path; its slopes are non-increasing.
  std::vector<std::size_t> hull{0};
  for (std::size_t k = 1; k <= n; ++k) {
    while (hull.size() >= 2) {
      const std::size_t i = hull[hull.size() - 2];
      const std::size_t j = hull.back();
      const double left = (path[j] - path[i]) / static_cast<double>(j - i);
      const double right = (path[k] - path[j]) / static_cast<double>(k - j);
      if (right >= left) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(k);
  }
  std::vector<double> z(n);
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    const std::size_t i = hull[h];
    const std::size_t j = hull[h + 1];
    const double slope = (path[j] - path[i]) / static_cast<double>(j - i);
    for (std::size_t k = i; k < j; ++k) z[k] = slope;
  }
  return z;
}

ConvexCombination synthesize_combination(const Algebra& alg, const HermitianElement& a,
                                         const HermitianElement& b, double epsilon) {
  require_shape(alg, a);
  require_shape(alg, b);
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::BadEpsilon, "epsilon must be a positive number");
  }
  const SpectralDecomposition da = decompose(a);
  const SpectralDecomposition db = decompose(b);
  const SpectrumProfile pa = spectrum_profile(da);
  const SpectrumProfile pb = spectrum_profile(db);
  const double scale = elements_scale(pa, pb);
  if (epsilon < 1e-9 * scale) {
    throw Error(ErrorCode::EpsilonTooSmall, "epsilon is below the numerical floor 1e-9*scale");
  }

  std::vector<BlockCombination> parts;
  double distance = 0.0;
  for (int j = 0; j < alg.num_blocks(); ++j) {
    const auto& alpha = pa.block(j);
    const auto& beta = pb.block(j);
    const double r = orbit_distance_block(alpha, beta);
    distance = std::max(distance, r);
    const auto z = project_to_majorized(alpha, beta, r);
    const RealMatrix d = hlp_transfer(z, beta);
    const auto terms = birkhoff_decompose(d);

    const auto& va = da.blocks[static_cast<std::size_t>(j)].vectors;
    const auto& vb = db.blocks[static_cast<std::size_t>(j)].vectors;
    BlockCombination part;
    for (const auto& t : terms) {
      part.weights.push_back(t.weight);
      part.unitaries.push_back(va * permutation_matrix(t.perm) * vb.adjoint());
    }
    parts.push_back(std::move(part));
  }

  ConvexCombination out = merge_blocks(parts);
  out.target_error = combination_error(out, a, b);
  if (out.target_error > distance + epsilon) {
    throw Error(ErrorCode::NoConvergence, "synthesized combination misses the target by " +
                                              std::to_string(out.target_error - distance));
  }
  return out;
}

ConvexCombination equalize_weights(const ConvexCombination& cc, int copies,
                                   const HermitianElement& a, const HermitianElement& b) {
  if (copies < 1) throw Error(ErrorCode::InvalidArgument, "copies must be at least 1");
  const std::size_t k = cc.weights.size();
  std::vector<int> counts(k);
  std::vector<double> remainder(k);
  int assigned = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double exact = cc.weights[i] * copies;
    counts[i] = static_cast<int>(std::floor(exact));
    remainder[i] = exact - counts[i];
    assigned += counts[i];
  }
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return remainder[x] > remainder[y]; });
  for (std::size_t i = 0; assigned < copies && k > 0; i = (i + 1) % k) {
    ++counts[order[i]];
    ++assigned;
  }

  ConvexCombination out;
  out.block_terms = cc.block_terms;
  for (std::size_t i = 0; i < k; ++i) {
    if (counts[i] == 0) continue;
    out.weights.push_back(static_cast<double>(counts[i]) / copies);
    out.unitaries.push_back(cc.unitaries[i]);
  }
  out.target_error = combination_error(out, a, b);
  return out;
}

PinchResult dixmier_pinch(const Algebra& alg, const std::vector<int>& rank_p,
                          const std::vector<int>& rank_q, const CentralElement& mu,
                          const CentralElement& nu) {
  const auto m = static_cast<std::size_t>(alg.num_blocks());
  if (rank_p.size() != m || rank_q.size() != m || mu.values.size() != m || nu.values.size() != m) {
    throw Error(ErrorCode::ShapeMismatch, "ranks and coefficients need one entry per block");
  }
  PinchResult out;
  out.rho.values.resize(m);
  std::vector<std::vector<double>> source_diag;
  std::vector<std::vector<double>> target_diag;
  double scale = 1.0;
  for (std::size_t j = 0; j < m; ++j) {
    const int p = rank_p[j];
    const int q = rank_q[j];
    if (p < 0 || q < 0) throw Error(ErrorCode::RankOverflow, "ranks must be nonnegative");
    if (p + q > alg.block_dim(static_cast<int>(j))) {
      throw Error(ErrorCode::RankOverflow, "p + q exceeds the block dimension in block " + std::to_string(j));
    }
    const double mj = mu.values[j];
    const double nj = nu.values[j];
    double rho = mj;
    if (p + q > 0 && mj != nj) {
      rho = std::clamp(weighted_mean(mj, p, nj, q), std::min(mj, nj), std::max(mj, nj));
    }
    out.rho.values[j] = rho;
    if (p + q == 0) continue;
    out.blocks.push_back(static_cast<int>(j));
    out.compressed_dims.push_back(p + q);
    std::vector<double> src(static_cast<std::size_t>(p), mj);
    src.insert(src.end(), static_cast<std::size_t>(q), nj);
    source_diag.push_back(std::move(src));
    target_diag.emplace_back(static_cast<std::size_t>(p + q), rho);
    scale = std::max({scale, std::abs(mj), std::abs(nj)});
  }

  if (out.blocks.empty()) {
    out.source = HermitianElement::diagonal({});
    out.target = HermitianElement::diagonal({});
    out.certificate.weights = {1.0};
    out.certificate.unitaries = {BlockMatrix{}};
    return out;
  }
  const Algebra comp = Algebra::build(out.compressed_dims);
  out.source = HermitianElement::diagonal(source_diag);
  out.target = HermitianElement::diagonal(target_diag);
  out.certificate = synthesize_combination(comp, out.target, out.source, 1e-9 * scale);
  return out;
}

}  // namespace orbithull
