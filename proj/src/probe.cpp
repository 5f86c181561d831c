#include "orbithull/probe.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdio>
#include <queue>
#include <string>

#include "orbithull/error.hpp"
#include "orbithull/majorization.hpp"
#include "orbithull/oracle.hpp"
#include "orbithull/random.hpp"
#include "orbithull/spectral.hpp"
#include "orbithull/synthesis.hpp"

namespace orbithull {

namespace {

constexpr int kMaxCopies = 1 << 14;

std::vector<double> to_vector(const RealVector& v) { return {v.data(), v.data() + v.size()}; }

std::vector<double> snap(const std::vector<double>& v, double h) {
  std::vector<double> out;
  out.reserve(v.size());
  for (double x : v) out.push_back(std::nearbyint(x / h) * h);
  return out;
}

// Edmonds–Karp on a dense capacity matrix; returns the flow value.
int max_flow(std::vector<std::vector<int>>& cap, int source, int sink) {
  const auto v = cap.size();
  int total = 0;
  while (true) {
    std::vector<int> parent(v, -1);
    parent[static_cast<std::size_t>(source)] = source;
    std::queue<int> queue;
    queue.push(source);
    while (!queue.empty() && parent[static_cast<std::size_t>(sink)] < 0) {
      const int u = queue.front();
      queue.pop();
      for (std::size_t w = 0; w < v; ++w) {
        if (parent[w] < 0 && cap[static_cast<std::size_t>(u)][w] > 0) {
          parent[w] = u;
          queue.push(static_cast<int>(w));
        }
      }
    }
    if (parent[static_cast<std::size_t>(sink)] < 0) return total;
    int push = INT_MAX;
    for (int w = sink; w != source; w = parent[static_cast<std::size_t>(w)]) {
      push = std::min(push, cap[static_cast<std::size_t>(parent[static_cast<std::size_t>(w)])][static_cast<std::size_t>(w)]);
    }
    for (int w = sink; w != source; w = parent[static_cast<std::size_t>(w)]) {
      const auto u = static_cast<std::size_t>(parent[static_cast<std::size_t>(w)]);
      cap[u][static_cast<std::size_t>(w)] -= push;
      cap[static_cast<std::size_t>(w)][u] += push;
    }
    total += push;
  }
}

// Runs of equal snapped values: level g covers slots start[g] .. start[g]+size[g]−1.
struct Levels {
  std::vector<int> start;
  std::vector<int> size;
};

Levels group_levels(const std::vector<double>& snapped) {
  Levels lv;
  for (std::size_t l = 0; l < snapped.size(); ++l) {
    if (l == 0 || snapped[l] != snapped[l - 1]) {
      lv.start.push_back(static_cast<int>(l));
      lv.size.push_back(0);
    }
    ++lv.size.back();
  }
  return lv;
}

// Spreads K(i, g) over the slots of level g round-robin, so every slot ends
// with degree exactly N: an N-regular bipartite multigraph on n + n vertices.
std::vector<std::vector<int>> spread_slots(const std::vector<std::vector<int>>& k, const Levels& lv,
                                           std::size_t n) {
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
  std::vector<int> ptr(lv.size.size(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t g = 0; g < lv.size.size(); ++g) {
      const int size = lv.size[g];
      const int count = k[i][g];
      const int full = count / size;
      const int rem = count % size;
      for (int s = 0; s < size; ++s) m[i][static_cast<std::size_t>(lv.start[g] + s)] += full;
      for (int s = 0; s < rem; ++s) {
        m[i][static_cast<std::size_t>(lv.start[g] + (ptr[g] + s) % size)] += 1;
      }
      ptr[g] = (ptr[g] + rem) % size;
    }
  }
  return m;
}

// Local search over N-regular multigraphs: move one edge of row i1 from
// slot l1 to l2 and one edge of row i2 back from l2 to l1, whenever that
// lowers max(|e_i1|, |e_i2|) below the current worst row error.
// Returns max_i |alpha_i − (1/N) Σ_l M(i, l) beta_l|.
double polish(std::vector<std::vector<int>>& m, const std::vector<double>& alpha,
              const std::vector<double>& beta, int copies) {
  const std::size_t n = alpha.size();
  std::vector<double> e(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = 0.0;
    for (std::size_t l = 0; l < n; ++l) v += m[i][l] * beta[l];
    e[i] = copies * alpha[i] - v;
  }
  const double floor = 1e-12 * copies;
  for (std::size_t iter = 0; iter < 20 * n * n; ++iter) {
    std::size_t i1 = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (std::abs(e[i]) > std::abs(e[i1])) i1 = i;
    }
    const double worst = std::abs(e[i1]);
    if (worst <= floor) break;
    double best = worst - floor;
    std::size_t b1 = n, b2 = n, bi = n;
    for (std::size_t l1 = 0; l1 < n; ++l1) {
      if (m[i1][l1] == 0) continue;
      for (std::size_t l2 = 0; l2 < n; ++l2) {
        const double d = beta[l2] - beta[l1];
        if (d == 0.0 || (d > 0.0) != (e[i1] > 0.0)) continue;
        const double new1 = std::abs(e[i1] - d);
        if (new1 >= best) continue;
        for (std::size_t i2 = 0; i2 < n; ++i2) {
          if (i2 == i1 || m[i2][l2] == 0) continue;
          const double local = std::max(new1, std::abs(e[i2] + d));
          if (local < best) {
            best = local;
            b1 = l1;
            b2 = l2;
            bi = i2;
          }
        }
      }
    }
    if (bi == n) break;
    const double d = beta[b2] - beta[b1];
    --m[i1][b1];
    ++m[i1][b2];
    --m[bi][b2];
    ++m[bi][b1];
    e[i1] -= d;
    e[bi] += d;
  }
  double worst = 0.0;
  for (double x : e) worst = std::max(worst, std::abs(x));
  return worst / copies;
}

ProbeCertificate grid_candidate(const std::vector<double>& alpha, const std::vector<double>& beta,
                                double h, double epsilon, int limit) {
  ProbeCertificate best;
  const auto sa = snap(alpha, h);
  const auto sb = snap(beta, h);
  const double r = orbit_distance_block(sa, sb);
  const auto z = project_to_majorized(sa, sb, r);
  const RealMatrix d = hlp_transfer(z, sb);
  const Levels lv = group_levels(sb);

  const std::size_t n = alpha.size();
  std::vector<std::vector<double>> f(n, std::vector<double>(lv.size.size(), 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t g = 0; g < lv.size.size(); ++g) {
      for (int l = lv.start[g]; l < lv.start[g] + lv.size[g]; ++l) {
        f[i][g] += d(static_cast<Eigen::Index>(i), l);
      }
    }
  }
  for (int copies = 2; copies < limit && copies <= kMaxCopies; copies *= 2) {
    const auto k = round_transport(f, lv.size, copies);
    if (k.empty()) continue;
    auto m = spread_slots(k, lv, n);
    const double err = polish(m, alpha, beta, copies);
    if (err <= epsilon) {
      best.copies = copies;
      best.error = err;
      best.multigraph = std::move(m);
      break;
    }
  }
  return best;
}

}  // namespace

std::vector<double> probe_pitches() {
  return {0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625, 0.0078125};
}

std::vector<std::vector<int>> round_transport(const std::vector<std::vector<double>>& f,
                                              const std::vector<int>& col_mass, int copies) {
  const std::size_t n = f.size();
  const std::size_t levels = col_mass.size();
  std::vector<std::vector<int>> base(n, std::vector<int>(levels, 0));
  std::vector<std::vector<char>> open(n, std::vector<char>(levels, 0));
  std::vector<int> row_need(n, copies);
  std::vector<int> col_need(levels);
  for (std::size_t g = 0; g < levels; ++g) col_need[g] = copies * col_mass[g];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t g = 0; g < levels; ++g) {
      const double x = copies * f[i][g];
      const double fl = std::floor(x + 1e-9);
      base[i][g] = static_cast<int>(fl);
      open[i][g] = x - fl > 1e-12;
      row_need[i] -= base[i][g];
      col_need[g] -= base[i][g];
    }
  }
  int need = 0;
  for (int r : row_need) {
    if (r < 0) return {};
    need += r;
  }
  for (int c : col_need) {
    if (c < 0) return {};
  }

  const std::size_t source = n + levels;
  const std::size_t sink = source + 1;
  std::vector<std::vector<int>> cap(sink + 1, std::vector<int>(sink + 1, 0));
  for (std::size_t i = 0; i < n; ++i) {
    cap[source][i] = row_need[i];
    for (std::size_t g = 0; g < levels; ++g) {
      if (open[i][g]) cap[i][n + g] = 1;
    }
  }
  for (std::size_t g = 0; g < levels; ++g) cap[n + g][sink] = col_need[g];
  if (max_flow(cap, static_cast<int>(source), static_cast<int>(sink)) != need) return {};

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t g = 0; g < levels; ++g) {
      if (open[i][g] && cap[i][n + g] == 0) ++base[i][g];
    }
  }
  return base;
}

ProbeCertificate probe_spectra(const std::vector<double>& alpha, const std::vector<double>& beta,
                               double epsilon) {
  if (alpha.size() != beta.size()) throw Error(ErrorCode::LengthMismatch, "spectra differ in length");
  const std::size_t n = alpha.size();
  double aligned = 0.0;
  for (std::size_t i = 0; i < n; ++i) aligned = std::max(aligned, std::abs(alpha[i] - beta[i]));
  ProbeCertificate best;
  if (aligned <= epsilon) {
    best.copies = 1;
    best.error = aligned;
    best.multigraph.assign(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) best.multigraph[i][i] = 1;
    return best;
  }
  for (double h : probe_pitches()) {
    const int limit = best.copies == 0 ? INT_MAX : best.copies;
    ProbeCertificate c = grid_candidate(alpha, beta, h, epsilon, limit);
    if (c.copies != 0 && (best.copies == 0 || c.copies < best.copies)) best = std::move(c);
  }
  return best;
}

std::vector<ProbeRow> uniform_probe(double epsilon, const std::vector<int>& dims, int trials,
                                    std::uint64_t seed) {
  if (!(epsilon > 0.0 && epsilon <= 2.0)) throw Error(ErrorCode::BadEpsilon, "epsilon must lie in (0, 2]");
  if (dims.empty()) throw Error(ErrorCode::InvalidArgument, "dims must be nonempty");
  if (trials < 0) throw Error(ErrorCode::InvalidArgument, "trials must be nonnegative");

  std::vector<ProbeRow> rows;
  for (int n : dims) {
    const Algebra alg = Algebra::build({n});
    for (int t = 0; t < trials; ++t) {
      const auto pair = generate_pair(
          alg, mix_seed({seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(t)}),
          PairKind::Majorizing);
      const auto alpha = to_vector(eigenvalues_hermitian(pair.a.block(0)));
      const auto beta = to_vector(eigenvalues_hermitian(pair.b.block(0)));
      const ProbeCertificate best = probe_spectra(alpha, beta, epsilon);
      if (best.copies == 0) {
        throw Error(ErrorCode::NoConvergence,
                    "no candidate reached epsilon for n=" + std::to_string(n) + " trial " + std::to_string(t));
      }
      rows.push_back({n, t, best.copies, best.error});
    }
  }
  return rows;
}

std::map<int, int> probe_maxima(const std::vector<ProbeRow>& rows) {
  std::map<int, int> out;
  for (const auto& r : rows) {
    auto [it, inserted] = out.emplace(r.n, r.terms);
    if (!inserted) it->second = std::max(it->second, r.terms);
  }
  return out;
}

void write_probe_csv(std::ostream& out, const std::vector<ProbeRow>& rows) {
  out << "n,trial,terms,error\n";
  char buf[64];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g", r.error);
    out << r.n << ',' << r.trial << ',' << r.terms << ',' << buf << '\n';
  }
}

}  // namespace orbithull
