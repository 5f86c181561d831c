#include "orbithull/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "orbithull/random.hpp"
#include "orbithull/spectral.hpp"

namespace orbithull {

namespace {

// Stop once gap ≤ kRelativeGap·f(x); then f(x) is within that factor of min f.
constexpr double kRelativeGap = 1e-4;

double dot_real(const Matrix& x, const Matrix& y) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < x.size(); ++k) s += (std::conj(x.data()[k]) * y.data()[k]).real();
  return s;
}

Matrix diag_conjugate(const Matrix& v, const std::vector<double>& d) {
  RealVector dv = Eigen::Map<const RealVector>(d.data(), static_cast<Eigen::Index>(d.size()));
  return v * dv.cast<Complex>().asDiagonal() * v.adjoint();
}

struct BlockRun {
  double best_op = std::numeric_limits<double>::infinity();
  double frobenius = 0.0;
  double gap = 0.0;
  int iterations = 0;
  bool certified = false;
};

// Solves min ½‖Σ λ_k S_k − a‖² over the simplex by pairwise steps. h holds
// <S_k, x − a> on entry and is kept in sync.
void reweight(const std::vector<std::vector<double>>& gram, std::vector<double>& lambda,
              std::vector<double>& h, double floor) {
  const std::size_t k = lambda.size();
  for (int step = 0; step < 200; ++step) {
    std::size_t up = 0;
    std::size_t down = k;
    for (std::size_t i = 0; i < k; ++i) {
      if (h[i] < h[up]) up = i;
      if (lambda[i] > 0.0 && (down == k || h[i] > h[down])) down = i;
    }
    if (down == k || down == up) return;
    const double diff = h[down] - h[up];
    if (diff <= floor) return;
    const double curv = gram[up][up] + gram[down][down] - 2.0 * gram[up][down];
    double gamma = lambda[down];
    if (curv > 0.0) gamma = std::min(gamma, diff / curv);
    lambda[up] += gamma;
    lambda[down] -= gamma;
    if (lambda[down] < 1e-15) {
      lambda[up] += lambda[down];
      lambda[down] = 0.0;
    }
    for (std::size_t i = 0; i < k; ++i) h[i] += gamma * (gram[i][up] - gram[i][down]);
  }
}

BlockRun frank_wolfe_block(const Matrix& a, const std::vector<double>& beta_ascending,
                           Matrix start, int iterations, double scale) {
  BlockRun run;
  const double n = static_cast<double>(a.rows());
  std::vector<Matrix> atoms{std::move(start)};
  std::vector<double> lambda{1.0};
  std::vector<std::vector<double>> gram{{dot_real(atoms[0], atoms[0])}};
  Matrix x = atoms[0];

  for (int it = 0; it <= iterations; ++it) {
    const Matrix g = x - a;
    const EigenSystem es = eig_hermitian(g);
    const double op = std::max(std::abs(es.values(0)), std::abs(es.values(es.values.size() - 1)));
    const double f = 0.5 * g.squaredNorm();
    run.best_op = std::min(run.best_op, op);
    run.frobenius = std::sqrt(2.0 * f);
    run.iterations = it;

    double lin = 0.0;
    for (Eigen::Index i = 0; i < es.values.size(); ++i) {
      lin += es.values(i) * beta_ascending[static_cast<std::size_t>(i)];
    }
    run.gap = std::max(0.0, dot_real(g, x) - lin);
    if (op <= 1e-9 * scale || run.gap <= 1e-12 * n * scale * scale + kRelativeGap * f) {
      run.certified = true;
      return run;
    }
    if (it == iterations) break;

    // Exact linear minimizer over the orbit: largest eigenvalues of b on the
    // most negative directions of the gradient.
    Matrix s = diag_conjugate(es.vectors, beta_ascending);
    std::vector<double> row;
    for (const auto& t : atoms) row.push_back(dot_real(t, s));
    row.push_back(dot_real(s, s));
    for (std::size_t i = 0; i < atoms.size(); ++i) gram[i].push_back(row[i]);
    gram.push_back(row);
    atoms.push_back(std::move(s));
    lambda.push_back(0.0);

    std::vector<double> h;
    for (const auto& t : atoms) h.push_back(dot_real(t, g));
    reweight(gram, lambda, h, 1e-15 * scale * scale);

    // Drop atoms that lost all weight.
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
      if (lambda[i] > 0.0) kept.push_back(i);
    }
    if (kept.size() != atoms.size()) {
      std::vector<Matrix> atoms2;
      std::vector<double> lambda2;
      std::vector<std::vector<double>> gram2;
      for (std::size_t i : kept) {
        atoms2.push_back(std::move(atoms[i]));
        lambda2.push_back(lambda[i]);
        std::vector<double> r;
        for (std::size_t k : kept) r.push_back(gram[i][k]);
        gram2.push_back(std::move(r));
      }
      atoms = std::move(atoms2);
      lambda = std::move(lambda2);
      gram = std::move(gram2);
    }
    double total = 0.0;
    for (double l : lambda) total += l;
    x = Matrix::Zero(a.rows(), a.cols());
    for (std::size_t i = 0; i < atoms.size(); ++i) x += (lambda[i] / total) * atoms[i];
  }
  return run;
}

}  // namespace

FrankWolfeResult frank_wolfe(const Algebra& alg, const HermitianElement& a,
                             const HermitianElement& b, int iterations, int restarts,
                             std::uint64_t seed) {
  require_shape(alg, a);
  require_shape(alg, b);
  iterations = std::max(iterations, 1);
  restarts = std::max(restarts, 1);
  const double scale = std::max({1.0, operator_norm(a), operator_norm(b)});

  FrankWolfeResult out;
  double frob_sq = 0.0;
  out.certified = true;
  for (int j = 0; j < alg.num_blocks(); ++j) {
    const Matrix& aj = a.block(j);
    const EigenSystem ea = eig_hermitian(aj);
    const EigenSystem eb = eig_hermitian(b.block(j));
    std::vector<double> beta(eb.values.data(), eb.values.data() + eb.values.size());
    std::vector<double> beta_ascending(beta.rbegin(), beta.rend());

    BlockRun best;
    bool certified = false;
    int runs = 0;
    for (int r = 0; r < restarts; ++r) {
      Matrix start;
      if (r == 0) {
        start = diag_conjugate(ea.vectors, beta);
      } else {
        Rng rng(mix_seed({seed, static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(j)}));
        const Matrix w = random_unitary(static_cast<int>(aj.rows()), rng);
        start = w * b.block(j) * w.adjoint();
      }
      const BlockRun run = frank_wolfe_block(aj, beta_ascending, std::move(start), iterations, scale);
      ++runs;
      out.iterations_run += run.iterations;
      if (run.best_op < best.best_op) best = run;
      if (run.certified) {
        certified = true;
        break;
      }
    }
    out.distance = std::max(out.distance, best.best_op);
    frob_sq += best.frobenius * best.frobenius;
    out.gap += best.gap;
    out.restarts_run = std::max(out.restarts_run, runs);
    out.certified = out.certified && certified;
  }
  out.frobenius_residual = std::sqrt(frob_sq);
  return out;
}

double frank_wolfe_distance(const Algebra& alg, const HermitianElement& a,
                            const HermitianElement& b, int iterations, int restarts,
                            std::uint64_t seed) {
  return frank_wolfe(alg, a, b, iterations, restarts, seed).distance;
}

bool diagonal_majorization_oracle(std::vector<double> alpha, std::vector<double> beta) {
  if (alpha.size() != beta.size()) {
    throw Error(ErrorCode::LengthMismatch, "vectors have lengths " + std::to_string(alpha.size()) +
                                               " and " + std::to_string(beta.size()));
  }
  std::sort(alpha.begin(), alpha.end(), std::greater<>());
  std::sort(beta.begin(), beta.end(), std::greater<>());
  double scale = 1.0;
  for (double v : alpha) scale = std::max(scale, std::abs(v));
  for (double v : beta) scale = std::max(scale, std::abs(v));
  const double tol = 1e-9 * scale;
  double sa = 0.0;
  double sb = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    sa += alpha[i];
    sb += beta[i];
    if (sa > sb + tol) return false;
  }
  return std::abs(sa - sb) <= tol;
}

PairKind parse_pair_kind(const std::string& name) {
  if (name == "majorizing") return PairKind::Majorizing;
  if (name == "submajorizing") return PairKind::Submajorizing;
  if (name == "random") return PairKind::Random;
  if (name == "boundary") return PairKind::Boundary;
  throw Error(ErrorCode::InvalidArgument, "unknown pair kind '" + name + "'");
}

const char* to_string(PairKind kind) {
  switch (kind) {
    case PairKind::Majorizing: return "majorizing";
    case PairKind::Submajorizing: return "submajorizing";
    case PairKind::Random: return "random";
    case PairKind::Boundary: return "boundary";
  }
  return "unknown";
}

GeneratedPair generate_pair(const Algebra& alg, std::uint64_t seed, PairKind kind, double radius) {
  Rng rng(mix_seed({seed, static_cast<std::uint64_t>(kind)}));
  HermitianElement b = random_hermitian(alg, rng);

  auto average = [&](bool unitary) {
    const int terms = 1 + rng.below(4);
    const auto weights = random_weights(terms, rng);
    std::vector<Matrix> acc;
    for (int n : alg.block_dims()) acc.push_back(Matrix::Zero(n, n));
    for (int t = 0; t < terms; ++t) {
      const BlockMatrix d = unitary ? random_unitary(alg, rng) : random_contraction(alg, rng);
      for (std::size_t j = 0; j < acc.size(); ++j) {
        acc[j] += weights[static_cast<std::size_t>(t)] * (d[j] * b.blocks()[j] * d[j].adjoint());
      }
    }
    return HermitianElement::from_blocks(std::move(acc));
  };

  switch (kind) {
    case PairKind::Majorizing:
      return {average(true), std::move(b)};
    case PairKind::Submajorizing:
      return {average(false), std::move(b)};
    case PairKind::Random: {
      HermitianElement a = random_hermitian(alg, rng);
      return {std::move(a), std::move(b)};
    }
    case PairKind::Boundary: {
      HermitianElement a = average(true);
      const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
      return {a.shifted(sign * radius), std::move(b)};
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown pair kind");
}

}  // namespace orbithull
