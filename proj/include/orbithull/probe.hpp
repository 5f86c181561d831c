#pragma once

// Empirical measurement of how many equally weighted unitary conjugates are
// needed to approximate a majorized contraction within epsilon, as n grows.

#include <cstdint>
#include <map>
#include <ostream>
#include <vector>

namespace orbithull {

struct ProbeRow {
  int n = 0;
  int trial = 0;
  /// N such that (1/N) Σ u_i b u_i* is within epsilon of a (repeats allowed).
  int terms = 0;
  double error = 0.0;
};

struct ProbeCertificate {
  /// 0 when no candidate reached epsilon.
  int copies = 0;
  double error = 0.0;
  /// n×n multiplicities, every row and column summing to copies. It splits
  /// into `copies` permutations σ_s with a_i ≈ (1/N) Σ_s b_{σ_s(i)}.
  std::vector<std::vector<int>> multigraph;
};

/// Pitches of the spectral grids tried by the probe.
std::vector<double> probe_pitches();

/// For each n and trial, draws a majorizing contraction pair in M_n from
/// (seed, n, trial) and reports the smallest N found. Candidates come from a
/// fixed family independent of epsilon: the single aligned conjugate, and for
/// each grid pitch h an N-regular rounding of the doubly stochastic transfer
/// between the h-rounded spectra (N = 2, 4, 8, ...), improved by edge swaps.
/// Throws BadEpsilon unless epsilon ∈ (0, 2].
std::vector<ProbeRow> uniform_probe(double epsilon, const std::vector<int>& dims, int trials,
                                    std::uint64_t seed);

/// The per-trial search on non-increasing spectra of a and b.
ProbeCertificate probe_spectra(const std::vector<double>& alpha, const std::vector<double>& beta,
                               double epsilon);

/// Largest terms value per n.
std::map<int, int> probe_maxima(const std::vector<ProbeRow>& rows);

/// Header n,trial,terms,error; errors with 17 significant digits.
void write_probe_csv(std::ostream& out, const std::vector<ProbeRow>& rows);

/// The N-rounding step: an integer matrix K with |K − N·f| < 1 entrywise, row
/// sums N and column sums N·col_mass. Empty if rounding failed numerically.
std::vector<std::vector<int>> round_transport(const std::vector<std::vector<double>>& f,
                                              const std::vector<int>& col_mass, int copies);

}  // namespace orbithull
