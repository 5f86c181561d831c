#include "orbithull/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace orbithull {

namespace {

SpectrumProfile profile_in(const Algebra& alg, const HermitianElement& x) {
  require_shape(alg, x);
  return spectrum_profile(x);
}

// Threshold set for one block: both spectra plus one point strictly below
// the joint minimum. With nonnegative_only, thresholds are restricted to
// t ≥ 0 and t = 0 is added.
std::vector<double> breakpoints(const std::vector<double>& a, const std::vector<double>& b,
                                bool nonnegative_only) {
  std::vector<double> ts;
  ts.reserve(a.size() + b.size() + 1);
  ts.insert(ts.end(), a.begin(), a.end());
  ts.insert(ts.end(), b.begin(), b.end());
  double lowest = 0.0;
  if (!ts.empty()) lowest = *std::min_element(ts.begin(), ts.end());
  ts.push_back(lowest - 1.0);
  if (nonnegative_only) {
    std::erase_if(ts, [](double t) { return t < 0.0; });
    ts.push_back(0.0);
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return ts;
}

std::optional<Violation> first_violation(const std::vector<double>& a,
                                         const std::vector<double>& b, int block,
                                         const char* family, bool nonnegative_only,
                                         double tol) {
  for (double t : breakpoints(a, b, nonnegative_only)) {
    const double lhs = tail_trace(a, t);
    const double rhs = tail_trace(b, t);
    if (lhs > rhs + tol) return Violation{block, t, lhs, rhs, family};
  }
  return std::nullopt;
}

void require_same_blocks(const SpectrumProfile& a, const SpectrumProfile& b) {
  if (a.num_blocks() != b.num_blocks()) {
    throw Error(ErrorCode::ShapeMismatch, "profiles differ in block count");
  }
  for (int j = 0; j < a.num_blocks(); ++j) {
    if (a.block(j).size() != b.block(j).size()) {
      throw Error(ErrorCode::ShapeMismatch, "profiles differ in block size");
    }
  }
}

// max over k of (Σ_{i≤k} x_i − Σ_{i≤k} y_i)/k for sorted non-increasing x, y.
double top_deficit(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0.0;
  double sy = 0.0;
  double worst = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sx += x[k];
    sy += y[k];
    worst = std::max(worst, (sx - sy) / static_cast<double>(k + 1));
  }
  return worst;
}

std::vector<double> reversed_negation(const std::vector<double>& x) {
  std::vector<double> out(x.rbegin(), x.rend());
  for (double& v : out) v = -v;
  return out;
}

std::vector<double> clamp_nonnegative(std::vector<double> x) {
  for (double& v : x) v = std::max(v, 0.0);
  return x;
}

}  // namespace

double check_tolerance(const SpectrumProfile& a, const SpectrumProfile& b, double rel_tol) {
  return rel_tol * std::max({1.0, a.norm(), b.norm()});
}

double tail_trace(const std::vector<double>& spectrum, double t) {
  double total = 0.0;
  for (double v : spectrum) total += std::max(v - t, 0.0);
  return total;
}

Verdict tracial_submajorize(const SpectrumProfile& a, const SpectrumProfile& b, double tol) {
  require_same_blocks(a, b);
  Verdict out{true, std::nullopt, tol};
  for (int j = 0; j < a.num_blocks(); ++j) {
    if (auto v = first_violation(a.block(j), b.block(j), j, "upper", true, tol)) {
      out.holds = false;
      out.violation = std::move(v);
      return out;
    }
  }
  return out;
}

Verdict majorize(const SpectrumProfile& a, const SpectrumProfile& b, double tol) {
  require_same_blocks(a, b);
  Verdict out{true, std::nullopt, tol};
  const SpectrumProfile na = a.negated();
  const SpectrumProfile nb = b.negated();
  for (int j = 0; j < a.num_blocks(); ++j) {
    auto v = first_violation(a.block(j), b.block(j), j, "upper", false, tol);
    if (!v) v = first_violation(na.block(j), nb.block(j), j, "lower", false, tol);
    if (v) {
      out.holds = false;
      out.violation = std::move(v);
      return out;
    }
  }
  return out;
}

double orbit_distance_block(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::ShapeMismatch, "block sizes differ");
  // Top-k sums of a − r against b, and top-k sums of −a − r against −b.
  return std::max(top_deficit(a, b), top_deficit(reversed_negation(a), reversed_negation(b)));
}

std::vector<double> orbit_distance_per_block(const SpectrumProfile& a, const SpectrumProfile& b) {
  require_same_blocks(a, b);
  std::vector<double> out;
  for (int j = 0; j < a.num_blocks(); ++j) out.push_back(orbit_distance_block(a.block(j), b.block(j)));
  return out;
}

double orbit_distance(const SpectrumProfile& a, const SpectrumProfile& b) {
  const auto per_block = orbit_distance_per_block(a, b);
  return *std::max_element(per_block.begin(), per_block.end());
}

double submaj_distance(const SpectrumProfile& a, const SpectrumProfile& b) {
  require_same_blocks(a, b);
  // Σ_{i≤k} (α_i − r)_+ = max_{m≤k} Σ_{i≤m} (α_i − r), so the least admissible
  // r for the family is max_m (Σ_{i≤m} α_i − Σ_{i≤m} (β_i)_+)/m.
  double worst = 0.0;
  for (int j = 0; j < a.num_blocks(); ++j) {
    const auto& x = a.block(j);
    const auto& y = b.block(j);
    worst = std::max(worst, top_deficit(x, clamp_nonnegative(y)));
    worst = std::max(worst, top_deficit(reversed_negation(x), clamp_nonnegative(reversed_negation(y))));
  }
  return worst;
}

void require_positive(const SpectrumProfile& x, const char* name) {
  const double floor = -1e-10 * std::max(1.0, x.norm());
  for (int j = 0; j < x.num_blocks(); ++j) {
    if (!x.block(j).empty() && x.block(j).back() < floor) {
      throw Error(ErrorCode::NotPositive, std::string(name) + " has eigenvalue " +
                                              std::to_string(x.block(j).back()) + " in block " +
                                              std::to_string(j));
    }
  }
}

Verdict tracial_submajorize(const Algebra& alg, const HermitianElement& a,
                            const HermitianElement& b, double rel_tol) {
  const auto pa = profile_in(alg, a);
  const auto pb = profile_in(alg, b);
  require_positive(pa, "a");
  require_positive(pb, "b");
  return tracial_submajorize(pa, pb, check_tolerance(pa, pb, rel_tol));
}

Verdict submajorize(const Algebra& alg, const HermitianElement& a, const HermitianElement& b,
                    double rel_tol) {
  const auto pa = profile_in(alg, a);
  const auto pb = profile_in(alg, b);
  const double tol = check_tolerance(pa, pb, rel_tol);
  Verdict out = tracial_submajorize(pa.positive_part(), pb.positive_part(), tol);
  if (!out.holds) return out;
  out = tracial_submajorize(pa.negative_part(), pb.negative_part(), tol);
  if (out.violation) out.violation->family = "lower";
  return out;
}

Verdict majorize(const Algebra& alg, const HermitianElement& a, const HermitianElement& b,
                 double rel_tol) {
  const auto pa = profile_in(alg, a);
  const auto pb = profile_in(alg, b);
  return majorize(pa, pb, check_tolerance(pa, pb, rel_tol));
}

double orbit_distance(const Algebra& alg, const HermitianElement& a, const HermitianElement& b) {
  return orbit_distance(profile_in(alg, a), profile_in(alg, b));
}

SubmajDistance submaj_distance(const Algebra& alg, const HermitianElement& a,
                               const HermitianElement& b) {
  require_shape(alg, a);
  const SpectralDecomposition dec = decompose(a);
  const double r = submaj_distance(spectrum_profile(dec), profile_in(alg, b));
  return {r, reassemble(dec, PiecewiseLinear::soft_threshold(r))};
}

ZeroInHullResult zero_in_hull(const Algebra& alg, const HermitianElement& a, double rel_tol) {
  const auto pa = profile_in(alg, a);
  const double tol = rel_tol * std::max(1.0, pa.norm());
  for (int j = 0; j < pa.num_blocks(); ++j) {
    const auto& s = pa.block(j);
    const double trace = std::accumulate(s.begin(), s.end(), 0.0);
    if (std::abs(trace) > tol) return {false, "nonzero trace", j};
  }
  // Quotients are sums of blocks; the image is invertible and positive
  // (negative) iff some block is.
  for (int j = 0; j < pa.num_blocks(); ++j) {
    const auto& s = pa.block(j);
    if (s.back() > tol) return {false, "positive invertible quotient", j};
    if (s.front() < -tol) return {false, "negative invertible quotient", j};
  }
  return {true, "", -1};
}

std::pair<SpectrumProfile, SpectrumProfile> CanonicalPair::reassembled() const {
  SpectrumProfile pa;
  SpectrumProfile pb;
  for (int j = 0; j < algebra.num_blocks(); ++j) {
    std::vector<double> sa;
    std::vector<double> sb;
    for (int i = 0; i < terms; ++i) {
      const auto ii = static_cast<std::size_t>(i);
      const auto jj = static_cast<std::size_t>(j);
      for (int k = 0; k < rank_profile[ii][jj]; ++k) {
        sa.push_back(alpha[ii].values[jj]);
        sb.push_back(beta[ii].values[jj]);
      }
    }
    pa.blocks.push_back(std::move(sa));
    pb.blocks.push_back(std::move(sb));
  }
  return {pa, pb};
}

namespace {

struct Group {
  int rank;
  double value;
};

std::vector<Group> multiplicity_groups(const std::vector<double>& s, double tie) {
  std::vector<Group> out;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t k = i;
    double sum = 0.0;
    while (k < s.size() && s[k] >= s[i] - tie) sum += s[k++];
    const auto count = static_cast<int>(k - i);
    out.push_back({count, sum / count});
    i = k;
  }
  return out;
}

struct Segment {
  int rank;
  double alpha;
  double beta;
};

// Common refinement of two multiplicity-group lists of the same total rank.
std::vector<Segment> refine(std::vector<Group> ga, std::vector<Group> gb) {
  std::vector<Segment> out;
  std::size_t ia = 0;
  std::size_t ib = 0;
  while (ia < ga.size() && ib < gb.size()) {
    // The group with the larger remaining rank is the one that gets split.
    const int take = std::min(ga[ia].rank, gb[ib].rank);
    out.push_back({take, ga[ia].value, gb[ib].value});
    ga[ia].rank -= take;
    gb[ib].rank -= take;
    if (ga[ia].rank == 0) ++ia;
    if (gb[ib].rank == 0) ++ib;
  }
  return out;
}

}  // namespace

CanonicalPair canonical_pair(const Algebra& alg, const SpectrumProfile& a,
                             const SpectrumProfile& b) {
  require_same_blocks(a, b);
  if (a.num_blocks() != alg.num_blocks()) {
    throw Error(ErrorCode::ShapeMismatch, "profile does not match algebra");
  }
  require_positive(a, "a");
  require_positive(b, "b");
  const double tie = kTieTol * std::max({1.0, a.norm(), b.norm()});

  std::vector<std::vector<Segment>> per_block;
  std::size_t terms = 0;
  for (int j = 0; j < alg.num_blocks(); ++j) {
    per_block.push_back(refine(multiplicity_groups(a.block(j), tie),
                               multiplicity_groups(b.block(j), tie)));
    terms = std::max(terms, per_block.back().size());
  }

  const auto m = static_cast<std::size_t>(alg.num_blocks());
  CanonicalPair cp{alg, static_cast<int>(terms), {}, {}, {}};
  cp.rank_profile.assign(terms, std::vector<int>(m, 0));
  cp.alpha.assign(terms, CentralElement{std::vector<double>(m, 0.0)});
  cp.beta.assign(terms, CentralElement{std::vector<double>(m, 0.0)});
  for (std::size_t j = 0; j < m; ++j) {
    const auto& segs = per_block[j];
    for (std::size_t i = 0; i < terms; ++i) {
      // Blocks with fewer segments are padded with rank-0 terms carrying the
      // last coefficients, which keeps every coordinate non-increasing.
      const Segment& s = i < segs.size() ? segs[i] : Segment{0, segs.back().alpha, segs.back().beta};
      cp.rank_profile[i][j] = s.rank;
      cp.alpha[i].values[j] = s.alpha;
      cp.beta[i].values[j] = s.beta;
    }
  }
  return cp;
}

CanonicalPair canonical_pair(const Algebra& alg, const HermitianElement& a,
                             const HermitianElement& b) {
  return canonical_pair(alg, profile_in(alg, a), profile_in(alg, b));
}

bool finite_conditions(const CanonicalPair& cp, double r, double rel_tol) {
  const double tol = rel_tol;
  for (int i = 0; i < cp.terms; ++i) {
    for (int j = 0; j < cp.algebra.num_blocks(); ++j) {
      const double x = cp.alpha[static_cast<std::size_t>(i)].values[static_cast<std::size_t>(j)];
      const double y = cp.beta[static_cast<std::size_t>(i)].values[static_cast<std::size_t>(j)];
      if (x < -tol || x > 1.0 + tol || y < -tol || y > 1.0 + tol) {
        throw Error(ErrorCode::NotContraction, "coefficient outside [0, 1]");
      }
    }
  }
  for (int j = 0; j < cp.algebra.num_blocks(); ++j) {
    const auto jj = static_cast<std::size_t>(j);
    const double n = cp.algebra.block_dim(j);
    auto weight = [&](int i) { return cp.rank_profile[static_cast<std::size_t>(i)][jj] / n; };
    auto alpha = [&](int i) { return cp.alpha[static_cast<std::size_t>(i)].values[jj]; };
    auto beta = [&](int i) { return cp.beta[static_cast<std::size_t>(i)].values[jj]; };

    double lhs = 0.0;
    double rhs = 0.0;
    for (int k = 0; k < cp.terms; ++k) {
      lhs += std::max(alpha(k) - r, 0.0) * weight(k);
      rhs += beta(k) * weight(k);
      if (lhs > rhs + tol) return false;
    }
    lhs = 0.0;
    rhs = 0.0;
    for (int k = cp.terms - 1; k >= 0; --k) {
      lhs += std::max(1.0 - alpha(k) - r, 0.0) * weight(k);
      rhs += (1.0 - beta(k)) * weight(k);
      if (lhs > rhs + tol) return false;
    }
  }
  return true;
}

bool spectrum_hull_check(const HermitianElement& a, const HermitianElement& b, double rel_tol) {
  const Algebra alg = a.algebra();
  const auto pa = profile_in(alg, a);
  const auto pb = profile_in(alg, b);
  const double tol = check_tolerance(pa, pb, rel_tol);
  for (int j = 0; j < pa.num_blocks(); ++j) {
    const auto& sa = pa.block(j);
    const auto& sb = pb.block(j);
    if (sa.front() > sb.front() + tol || sa.back() < sb.back() - tol) return false;
  }
  return true;
}

bool quotient_norm_check(const Algebra& alg, const HermitianElement& a,
                         const HermitianElement& b, double rel_tol) {
  const auto pa = profile_in(alg, a);
  const auto pb = profile_in(alg, b);
  require_positive(pa, "a");
  require_positive(pb, "b");
  const double tol = check_tolerance(pa, pb, rel_tol);
  for (int j = 0; j < pa.num_blocks(); ++j) {
    if (pa.block(j).front() > pb.block(j).front() + tol) return false;
  }
  return true;
}

}  // namespace orbithull
