#include "orbithull/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "orbithull/json_io.hpp"
#include "orbithull/majorization.hpp"
#include "orbithull/oracle.hpp"
#include "orbithull/probe.hpp"
#include "orbithull/synthesis.hpp"

namespace orbithull::cli {

namespace {

using io::Json;
using Clock = std::chrono::steady_clock;

int parse_int(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw Error(ErrorCode::InvalidArgument, "bad " + what + " '" + s + "'");
  return v;
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::InvalidArgument, "bad " + what + " '" + s + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::vector<double> parse_doubles(const std::string& s, const std::string& what) {
  std::vector<double> out;
  for (const auto& t : split(s, ',')) out.push_back(parse_double(t, what));
  return out;
}

Json violation_json(const Violation& v) {
  Json j;
  j["block"] = v.block;
  j["t"] = v.t;
  j["lhs"] = v.lhs;
  j["rhs"] = v.rhs;
  j["family"] = v.family;
  return j;
}

struct Pair {
  Algebra alg;
  HermitianElement a;
  HermitianElement b;
};

Pair load_pair(const std::string& path_a, const std::string& path_b) {
  HermitianElement a = io::element_from_json(io::read_file(path_a), "a");
  HermitianElement b = io::element_from_json(io::read_file(path_b), "b");
  const Algebra alg = a.algebra();
  if (!(b.algebra() == alg)) {
    throw Error(ErrorCode::ShapeMismatch, "A and B live in different algebras");
  }
  return {alg, std::move(a), std::move(b)};
}

class Emitter {
 public:
  Emitter(std::ostream& out, double tol) : out_(out), tol_(tol), start_(Clock::now()) {}

  void emit(Json result, Json extras = Json::object()) {
    Json doc;
    doc["result"] = std::move(result);
    for (auto it = extras.begin(); it != extras.end(); ++it) doc[it.key()] = it.value();
    doc["tolerance"] = tol_;
    doc["elapsed_ms"] = std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
    out_ << io::dump(doc);
  }

 private:
  std::ostream& out_;
  double tol_;
  Clock::time_point start_;
};

}  // namespace

double default_tolerance() {
  const char* env = std::getenv("ORBITHULL_TOL");
  if (env == nullptr || *env == '\0') return kDefaultRelTol;
  const double v = parse_double(env, "ORBITHULL_TOL");
  if (!(v > 0.0)) throw Error(ErrorCode::InvalidArgument, "ORBITHULL_TOL must be positive");
  return v;
}

std::vector<int> parse_dims(const std::string& spec) {
  std::vector<int> dims;
  for (const auto& token : split(spec, ',')) {
    const auto dots = token.find("..");
    if (dots == std::string::npos) {
      dims.push_back(parse_int(token, "dimension"));
      continue;
    }
    const int lo = parse_int(token.substr(0, dots), "dimension");
    const int hi = parse_int(token.substr(dots + 2), "dimension");
    if (hi < lo) throw Error(ErrorCode::InvalidArgument, "empty range '" + token + "'");
    for (int n = lo; n <= hi; ++n) dims.push_back(n);
  }
  if (dims.empty()) throw Error(ErrorCode::InvalidArgument, "no dimensions given");
  for (int n : dims) {
    if (n < 1) throw Error(ErrorCode::BadDimension, "dimensions must be at least 1");
  }
  return dims;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Majorization, hull distances and unitary-mixing synthesis in multi-matrix algebras",
               "orbithull"};
  app.require_subcommand(1);

  std::string path_a;
  std::string path_b;
  auto add_pair = [&](CLI::App* sub) {
    sub->add_option("A", path_a, "element a (JSON)")->required();
    sub->add_option("B", path_b, "element b (JSON)")->required();
  };

  auto* check_maj = app.add_subcommand("check-majorize", "is a in the closed convex hull of {u b u*}");
  add_pair(check_maj);
  auto* check_sub = app.add_subcommand("check-submajorize", "is a in the hull of {d b d* : ||d|| <= 1}");
  add_pair(check_sub);
  auto* dist = app.add_subcommand("distance", "distance from a to the hull of the unitary orbit of b");
  add_pair(dist);
  auto* dist_sub = app.add_subcommand("distance-submaj", "distance from a to the contraction hull of b");
  add_pair(dist_sub);

  auto* zero = app.add_subcommand("zero-in-hull", "is 0 in the hull of the unitary orbit of a");
  zero->add_option("A", path_a, "element a (JSON)")->required();

  double epsilon = 0.0;
  int equal_weights = 0;
  auto* synth = app.add_subcommand("synthesize", "explicit weights and unitaries approximating a");
  add_pair(synth);
  synth->add_option("--epsilon", epsilon, "slack above the hull distance")->required();
  synth->add_option("--equal-weights", equal_weights, "round weights to multiples of 1/N");

  std::string dims_spec;
  std::string ranks_spec;
  std::string mu_spec;
  std::string nu_spec;
  auto* pinch = app.add_subcommand("pinch", "central averaging of mu P + nu Q");
  pinch->add_option("--dims", dims_spec, "block dimensions, e.g. 2,3")->required();
  pinch->add_option("--ranks", ranks_spec, "p:q per block, e.g. 1:1,0:2")->required();
  pinch->add_option("--mu", mu_spec, "mu per block")->required();
  pinch->add_option("--nu", nu_spec, "nu per block")->required();

  int trials = 100;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string probe_dims = "2..40";
  auto* probe = app.add_subcommand("probe-uniform", "equal-weight unitary counts versus dimension");
  probe->add_option("--epsilon", epsilon, "approximation target in (0, 2]")->required();
  probe->add_option("--dims", probe_dims, "dimensions, e.g. 2..40 or 2,3");
  probe->add_option("--trials", trials, "pairs per dimension");
  probe->add_option("--seed", seed, "random seed");
  probe->add_option("--out", out_path, "write the CSV table here");

  int restarts = 50;
  int iterations = 500;
  auto* oracle = app.add_subcommand("oracle-distance", "Frank-Wolfe upper bound on the hull distance");
  add_pair(oracle);
  oracle->add_option("--restarts", restarts, "number of restarts");
  oracle->add_option("--iterations", iterations, "iterations per restart");
  oracle->add_option("--seed", seed, "random seed");

  std::string kind = "majorizing";
  std::string gen_dims = "4";
  double radius = 0.3;
  std::string prefix;
  auto* gen = app.add_subcommand("gen", "generate a test pair");
  gen->add_option("--kind", kind, "majorizing | submajorizing | random | boundary")->required();
  gen->add_option("--seed", seed, "random seed");
  gen->add_option("--dims", gen_dims, "block dimensions, e.g. 2,3");
  gen->add_option("--radius", radius, "distance of boundary pairs");
  gen->add_option("--prefix", prefix, "also write PREFIX_a.json and PREFIX_b.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    const double tol = default_tolerance();
    Emitter emit(out, tol);

    if (check_maj->parsed()) {
      const Pair p = load_pair(path_a, path_b);
      const Verdict v = majorize(p.alg, p.a, p.b, tol);
      Json extras;
      if (v.violation) extras["witness"] = violation_json(*v.violation);
      extras["distance"] = orbit_distance(p.alg, p.a, p.b);
      emit.emit(v.holds, std::move(extras));
    } else if (check_sub->parsed()) {
      const Pair p = load_pair(path_a, path_b);
      const Verdict v = submajorize(p.alg, p.a, p.b, tol);
      Json extras;
      if (v.violation) extras["witness"] = violation_json(*v.violation);
      extras["distance"] = submaj_distance(p.alg, p.a, p.b).distance;
      emit.emit(v.holds, std::move(extras));
    } else if (dist->parsed()) {
      const Pair p = load_pair(path_a, path_b);
      const auto pa = spectrum_profile(p.a);
      const auto pb = spectrum_profile(p.b);
      Json extras;
      extras["per_block"] = orbit_distance_per_block(pa, pb);
      emit.emit(orbit_distance(pa, pb), std::move(extras));
    } else if (dist_sub->parsed()) {
      const Pair p = load_pair(path_a, path_b);
      const SubmajDistance d = submaj_distance(p.alg, p.a, p.b);
      Json extras;
      extras["witness"] = io::element_to_json(d.witness);
      emit.emit(d.distance, std::move(extras));
    } else if (zero->parsed()) {
      const HermitianElement a = io::element_from_json(io::read_file(path_a), "a");
      const ZeroInHullResult z = zero_in_hull(a.algebra(), a, tol);
      Json extras;
      if (!z.holds) {
        Json w;
        w["reason"] = z.reason;
        w["block"] = z.block;
        extras["witness"] = std::move(w);
      }
      emit.emit(z.holds, std::move(extras));
    } else if (synth->parsed()) {
      const Pair p = load_pair(path_a, path_b);
      ConvexCombination cc = synthesize_combination(p.alg, p.a, p.b, epsilon);
      if (synth->count("--equal-weights") > 0) cc = equalize_weights(cc, equal_weights, p.a, p.b);
      Json extras;
      extras["distance"] = orbit_distance(p.alg, p.a, p.b);
      emit.emit(io::combination_to_json(cc), std::move(extras));
    } else if (pinch->parsed()) {
      const Algebra alg = Algebra::build(parse_dims(dims_spec));
      std::vector<int> rank_p;
      std::vector<int> rank_q;
      for (const auto& token : split(ranks_spec, ',')) {
        const auto parts = split(token, ':');
        if (parts.size() != 2) throw Error(ErrorCode::InvalidArgument, "ranks must look like p:q");
        rank_p.push_back(parse_int(parts[0], "rank"));
        rank_q.push_back(parse_int(parts[1], "rank"));
      }
      const PinchResult r = dixmier_pinch(alg, rank_p, rank_q, CentralElement{parse_doubles(mu_spec, "mu")},
                                          CentralElement{parse_doubles(nu_spec, "nu")});
      Json result;
      result["rho"] = r.rho.values;
      result["blocks"] = r.blocks;
      result["compressed_dims"] = r.compressed_dims;
      result["source"] = io::element_to_json(r.source);
      result["target"] = io::element_to_json(r.target);
      result["certificate"] = io::combination_to_json(r.certificate);
      emit.emit(std::move(result));
    } else if (probe->parsed()) {
      const auto rows = uniform_probe(epsilon, parse_dims(probe_dims), trials, seed);
      if (out_path.empty()) {
        write_probe_csv(out, rows);
      } else {
        std::ofstream file(out_path);
        if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write '" + out_path + "'");
        write_probe_csv(file, rows);
        Json maxima = Json::object();
        for (const auto& [n, terms] : probe_maxima(rows)) maxima[std::to_string(n)] = terms;
        Json result;
        result["rows"] = rows.size();
        result["max_terms"] = std::move(maxima);
        result["out"] = out_path;
        emit.emit(std::move(result));
      }
    } else if (oracle->parsed()) {
      const Pair p = load_pair(path_a, path_b);
      const FrankWolfeResult fw = frank_wolfe(p.alg, p.a, p.b, iterations, restarts, seed);
      Json extras;
      extras["frobenius_residual"] = fw.frobenius_residual;
      extras["gap"] = fw.gap;
      extras["certified"] = fw.certified;
      extras["restarts_run"] = fw.restarts_run;
      extras["iterations_run"] = fw.iterations_run;
      emit.emit(fw.distance, std::move(extras));
    } else if (gen->parsed()) {
      const Algebra alg = Algebra::build(parse_dims(gen_dims));
      const GeneratedPair pair = generate_pair(alg, seed, parse_pair_kind(kind), radius);
      const Json a = io::element_to_json(pair.a);
      const Json b = io::element_to_json(pair.b);
      if (!prefix.empty()) {
        for (const auto& [suffix, doc] : {std::pair{"_a.json", &a}, std::pair{"_b.json", &b}}) {
          std::ofstream file(prefix + suffix);
          if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write '" + prefix + suffix + "'");
          file << io::dump(*doc);
        }
      }
      Json result;
      result["a"] = a;
      result["b"] = b;
      Json extras;
      extras["kind"] = kind;
      extras["seed"] = seed;
      emit.emit(std::move(result), std::move(extras));
    }
    return kOk;
  } catch (const Error& e) {
    Json j;
    j["error"] = to_string(e.code());
    j["message"] = e.what();
    err << io::dump(j);
    return e.is_numerical() ? kNumericalFailure : kBadInput;
  } catch (const std::exception& e) {
    Json j;
    j["error"] = "InvalidArgument";
    j["message"] = e.what();
    err << io::dump(j);
    return kBadInput;
  }
}

}  // namespace orbithull::cli
