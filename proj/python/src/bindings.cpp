#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "orbithull/majorization.hpp"
#include "orbithull/oracle.hpp"
#include "orbithull/probe.hpp"
#include "orbithull/spectral.hpp"
#include "orbithull/synthesis.hpp"

namespace py = pybind11;
using namespace orbithull;

namespace {

// Elements cross the boundary as lists of square complex arrays, one per block.
using Blocks = std::vector<Matrix>;

Algebra algebra_of(const Blocks& blocks) {
  std::vector<int> dims;
  for (const auto& b : blocks) dims.push_back(static_cast<int>(b.rows()));
  return Algebra::build(dims);
}

HermitianElement element(const Blocks& blocks) {
  return HermitianElement::embed(algebra_of(blocks), blocks);
}

std::pair<Algebra, std::pair<HermitianElement, HermitianElement>> pair_of(const Blocks& a, const Blocks& b) {
  const Algebra alg = algebra_of(a);
  return {alg, {HermitianElement::embed(alg, a), HermitianElement::embed(alg, b)}};
}

py::dict verdict_dict(const Verdict& v) {
  py::dict d;
  d["holds"] = v.holds;
  d["tolerance"] = v.tolerance;
  if (v.violation) {
    py::dict w;
    w["block"] = v.violation->block;
    w["t"] = v.violation->t;
    w["lhs"] = v.violation->lhs;
    w["rhs"] = v.violation->rhs;
    w["family"] = v.violation->family;
    d["witness"] = w;
  } else {
    d["witness"] = py::none();
  }
  return d;
}

py::dict combination_dict(const ConvexCombination& cc) {
  py::dict d;
  d["weights"] = cc.weights;
  d["unitaries"] = cc.unitaries;
  d["target_error"] = cc.target_error;
  d["block_terms"] = cc.block_terms;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Majorization, orbit-hull distances and unitary-mixing synthesis in multi-matrix algebras";

  py::register_exception<Error>(m, "OrbithullError", PyExc_ValueError);

  m.def("spectrum", [](const Blocks& a) { return spectrum_profile(element(a)).blocks; }, py::arg("a"),
        "Non-increasing eigenvalues of each block.");

  m.def(
      "majorize",
      [](const Blocks& a, const Blocks& b, double rel_tol) {
        auto [alg, p] = pair_of(a, b);
        return verdict_dict(majorize(alg, p.first, p.second, rel_tol));
      },
      py::arg("a"), py::arg("b"), py::arg("rel_tol") = kDefaultRelTol);

  m.def(
      "submajorize",
      [](const Blocks& a, const Blocks& b, double rel_tol) {
        auto [alg, p] = pair_of(a, b);
        return verdict_dict(submajorize(alg, p.first, p.second, rel_tol));
      },
      py::arg("a"), py::arg("b"), py::arg("rel_tol") = kDefaultRelTol);

  m.def(
      "orbit_distance",
      [](const Blocks& a, const Blocks& b) {
        auto [alg, p] = pair_of(a, b);
        return orbit_distance(alg, p.first, p.second);
      },
      py::arg("a"), py::arg("b"));

  m.def(
      "orbit_distance_per_block",
      [](const Blocks& a, const Blocks& b) {
        auto [alg, p] = pair_of(a, b);
        return orbit_distance_per_block(spectrum_profile(p.first), spectrum_profile(p.second));
      },
      py::arg("a"), py::arg("b"));

  m.def(
      "submaj_distance",
      [](const Blocks& a, const Blocks& b) {
        auto [alg, p] = pair_of(a, b);
        const auto r = submaj_distance(alg, p.first, p.second);
        return py::make_tuple(r.distance, r.witness.blocks());
      },
      py::arg("a"), py::arg("b"), "Returns (distance, witness blocks).");

  m.def(
      "zero_in_hull",
      [](const Blocks& a, double rel_tol) {
        const auto r = zero_in_hull(algebra_of(a), element(a), rel_tol);
        py::dict d;
        d["holds"] = r.holds;
        d["reason"] = r.reason;
        d["block"] = r.block;
        return d;
      },
      py::arg("a"), py::arg("rel_tol") = kDefaultRelTol);

  m.def(
      "synthesize",
      [](const Blocks& a, const Blocks& b, double epsilon, int equal_weights) {
        auto [alg, p] = pair_of(a, b);
        ConvexCombination cc = synthesize_combination(alg, p.first, p.second, epsilon);
        if (equal_weights > 0) cc = equalize_weights(cc, equal_weights, p.first, p.second);
        return combination_dict(cc);
      },
      py::arg("a"), py::arg("b"), py::arg("epsilon"), py::arg("equal_weights") = 0);

  m.def(
      "dixmier_pinch",
      [](const std::vector<int>& dims, const std::vector<int>& rank_p, const std::vector<int>& rank_q,
         const std::vector<double>& mu, const std::vector<double>& nu) {
        const auto r = dixmier_pinch(Algebra::build(dims), rank_p, rank_q, CentralElement{mu}, CentralElement{nu});
        py::dict d;
        d["rho"] = r.rho.values;
        d["blocks"] = r.blocks;
        d["compressed_dims"] = r.compressed_dims;
        d["source"] = r.source.blocks();
        d["target"] = r.target.blocks();
        d["certificate"] = combination_dict(r.certificate);
        return d;
      },
      py::arg("dims"), py::arg("rank_p"), py::arg("rank_q"), py::arg("mu"), py::arg("nu"));

  m.def(
      "uniform_probe",
      [](double epsilon, const std::vector<int>& dims, int trials, std::uint64_t seed) {
        std::vector<std::tuple<int, int, int, double>> rows;
        for (const auto& r : uniform_probe(epsilon, dims, trials, seed)) rows.emplace_back(r.n, r.trial, r.terms, r.error);
        return rows;
      },
      py::arg("epsilon"), py::arg("dims"), py::arg("trials") = 100, py::arg("seed") = 0,
      "Rows (n, trial, terms, error).");

  m.def(
      "frank_wolfe_distance",
      [](const Blocks& a, const Blocks& b, int iterations, int restarts, std::uint64_t seed) {
        auto [alg, p] = pair_of(a, b);
        return frank_wolfe_distance(alg, p.first, p.second, iterations, restarts, seed);
      },
      py::arg("a"), py::arg("b"), py::arg("iterations") = 500, py::arg("restarts") = 50, py::arg("seed") = 0);

  m.def(
      "generate_pair",
      [](const std::vector<int>& dims, std::uint64_t seed, const std::string& kind, double radius) {
        const auto p = generate_pair(Algebra::build(dims), seed, parse_pair_kind(kind), radius);
        return py::make_tuple(p.a.blocks(), p.b.blocks());
      },
      py::arg("dims"), py::arg("seed"), py::arg("kind") = "majorizing", py::arg("radius") = 0.3);
}
