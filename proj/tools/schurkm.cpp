// Copyright 2026 The schurkm Authors
// SPDX-License-Identifier: Apache-2.0

// schurkm: command-line front end. Exit codes: 0 ok, 2 invalid input,
// 3 size guard.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "schur/circuits.hpp"
#include "schur/error.hpp"
#include "schur/estimation.hpp"
#include "schur/experiments.hpp"
#include "schur/heavy_hitters.hpp"
#include "schur/io.hpp"
#include "schur/schur_states.hpp"
#include "schur/sparse_sampler.hpp"

namespace {

using namespace schur;

constexpr int kExitInvalid = 2;
constexpr int kExitTooLarge = 3;

struct Options {
  std::string n_text;
  std::string in_path;
  std::optional<int> in_2m;
  std::string circuit_file;
  std::string perm;
  std::string x;
  std::string target_path;
  std::optional<int> target_2m;
  std::string prefix;
  double theta = 0.0;
  double gamma = 0.1;
  std::optional<double> epsilon;
  int t = 1;
  std::optional<double> delta;
  std::uint64_t samples = 1000;
  std::uint64_t seed = 0;
  std::string format;
  std::string tail_sampler = "rejection";
  std::string out_file;
  std::string estimator;
  std::string marginal;
  bool matrix = false;
  bool all_rows = false;
  std::optional<int> twice_j;
  int paths_per_n = 5;
  int perms_per_path = 10;
  double c = 1.0;
  double d = 2.0;
  unsigned threads = 0;
  bool with_distributions = false;
};

/// Emits to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path.empty()) return;
    file_.open(path, std::ios::binary | std::ios::trunc);
    if (!file_) fail(Errc::kInvalidArgument, "cannot open output file " + path);
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::kInvalidArgument, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

MeanEstimator parse_estimator(const std::string& name, MeanEstimator fallback) {
  if (name.empty()) return fallback;
  if (name == "catoni") return MeanEstimator::kCatoni;
  if (name == "mom" || name == "median-of-means") return MeanEstimator::kMedianOfMeans;
  fail(Errc::kInvalidArgument, "unknown estimator " + name);
}

MarginalMethod parse_marginal(const std::string& name, MarginalMethod fallback) {
  if (name.empty()) return fallback;
  if (name == "swap") return MarginalMethod::kSwapOverlaps;
  if (name == "product") return MarginalMethod::kProductForm;
  fail(Errc::kInvalidArgument, "unknown marginal method " + name);
}

int parse_single_n(const std::string& text) {
  try {
    std::size_t used = 0;
    const int n = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return n;
  } catch (const std::exception&) {
    fail(Errc::kParse, "--n expects an integer, got " + text);
  }
}

/// "4..10" or "7".
std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int n = parse_single_n(text);
    return {n, n};
  }
  return {parse_single_n(text.substr(0, dots)), parse_single_n(text.substr(dots + 2))};
}

SchurLabel input_label(const Options& o) {
  if (!o.in_2m) fail(Errc::kInvalidArgument, "--in-2m is required");
  const SchurLabel label = make_label(validate_path(o.in_path), *o.in_2m);
  if (!o.n_text.empty() && parse_single_n(o.n_text) != label.qubits()) {
    fail(Errc::kLengthMismatch, "--n differs from the input path length + 1");
  }
  return label;
}

/// W |J, M> (x) |0^k>, or U_pi |J, M>, or |J, M> alone.
std::shared_ptr<const CtState> input_state(const Options& o) {
  const SchurLabel label = input_label(o);
  auto base = std::make_shared<SchurCtState>(label);
  if (!o.circuit_file.empty() && !o.perm.empty()) fail(Errc::kInvalidArgument, "give --circuit or --perm, not both");
  if (!o.circuit_file.empty()) {
    return std::make_shared<PreparedState>(parse_circuit(read_file(o.circuit_file)), base);
  }
  if (!o.perm.empty()) {
    return std::make_shared<PermutedState>(parse_permutation(o.perm, label.qubits()), base);
  }
  return base;
}

void require_seed(const CLI::App& app) {
  if (app.count("--seed") == 0) fail(Errc::kInvalidArgument, "--seed is required for randomized commands");
}

bool csv(const Options& o, bool csv_default) { return o.format.empty() ? csv_default : o.format == "csv"; }

void write_json(Sink& sink, const Json& j) { sink.stream() << j.dump(2) << '\n'; }

// ---------------------------------------------------------------------------

void cmd_amplitude(const Options& o) {
  const auto phi = input_state(o);
  if (o.x.empty()) fail(Errc::kInvalidArgument, "--x is required");
  if (o.x.size() != static_cast<std::size_t>(phi->num_qubits())) {
    fail(Errc::kLengthMismatch, "--x must have one character per wire");
  }
  const double a = phi->amplitude(parse_bits(o.x));
  Sink sink(o.out_file);
  if (csv(o, false)) {
    sink.stream() << "x,amplitude\n" << o.x << ',' << format_real(a) << '\n';
  } else {
    write_json(sink, {{"x", o.x}, {"amplitude", a}});
  }
}

void cmd_sample_state(const Options& o) {
  const auto phi = input_state(o);
  Rng rng(o.seed);
  Sink sink(o.out_file);
  const bool as_csv = csv(o, false);
  if (as_csv) sink.stream() << "x\n";
  for (std::uint64_t i = 0; i < o.samples; ++i) {
    const std::string x = format_bits(phi->sample(rng), phi->num_qubits());
    if (as_csv) {
      sink.stream() << x << '\n';
    } else {
      sink.stream() << Json{{"x", x}}.dump() << '\n';
    }
  }
}

EstimationParams estimation_params(const Options& o, MeanEstimator fallback) {
  EstimationParams p;
  if (o.epsilon) p.epsilon = *o.epsilon;
  if (o.delta) p.delta = *o.delta;
  p.seed = o.seed;
  p.estimator = parse_estimator(o.estimator, fallback);
  validate(p);
  return p;
}

void cmd_estimate_overlap(const Options& o) {
  const auto phi = input_state(o);
  const SchurLabel target = make_label(validate_path(o.target_path), *o.target_2m);
  const EstimationParams p = estimation_params(o, MeanEstimator::kMedianOfMeans);
  const Estimate e = estimate_overlap(*phi, SchurCtState(target), p);
  Sink sink(o.out_file);
  Json j = estimate_to_json("", p, e);
  j.erase("prefix");
  j["target"] = label_to_json(target);
  write_json(sink, j);
}

void cmd_estimate_marginal(const Options& o) {
  const auto phi = input_state(o);
  const SpinPath prefix = validate_path(o.prefix);
  const EstimationParams p = estimation_params(o, MeanEstimator::kMedianOfMeans);
  const Estimate e = estimate_marginal(prefix, phi, p, parse_marginal(o.marginal, MarginalMethod::kSwapOverlaps));
  Sink sink(o.out_file);
  write_json(sink, estimate_to_json(o.prefix, p, e));
}

void cmd_km(const Options& o) {
  const auto phi = input_state(o);
  KMParams p;
  p.theta = o.theta;
  p.gamma = o.gamma;
  p.seed = o.seed;
  p.estimator = parse_estimator(o.estimator, MeanEstimator::kCatoni);
  p.method = parse_marginal(o.marginal, MarginalMethod::kProductForm);
  validate(p);
  const HeavyList heavy = km_search(*phi, p);
  const double eps = o.epsilon.value_or(std::min(p.theta / 4.0, 2.0));
  const double delta = o.delta.value_or(p.gamma);
  const auto resolved = resolve_heavy_probabilities(*phi, heavy, eps, delta, derive_seed(o.seed, 1), p.estimator);
  Sink sink(o.out_file);
  write_json(sink, heavy_report_to_json(heavy, resolved));
}

void cmd_sparse_sample(const Options& o) {
  const auto phi = input_state(o);
  SparsityParams p;
  if (o.epsilon) p.epsilon = *o.epsilon;
  p.t = o.t;
  p.gamma = o.gamma;
  p.sample_count = o.samples;
  p.seed = o.seed;
  p.estimator = parse_estimator(o.estimator, MeanEstimator::kCatoni);
  p.method = parse_marginal(o.marginal, MarginalMethod::kProductForm);
  if (o.tail_sampler == "gnw") {
    p.tail = TailSampler::kGnw;
  } else if (o.tail_sampler != "rejection") {
    fail(Errc::kInvalidArgument, "--tail-sampler must be rejection or gnw");
  }
  validate(p);
  const ApproxDistribution d = build_approx_distribution(*phi, p);
  const auto draws = sample_many(d, o.samples, derive_seed(o.seed, 3));
  Sink sink(o.out_file);
  if (csv(o, false)) {
    sink.stream() << "path,twice_m\n";
    for (const auto& l : draws) sink.stream() << l.path.to_string() << ',' << l.twice_m() << '\n';
    return;
  }
  Json samples = Json::array();
  for (const auto& l : draws) samples.push_back(label_to_json(l));
  write_json(sink, {{"snapshot", approx_to_json(d)}, {"samples", samples}});
}

void cmd_exact_dist(const Options& o) {
  Sink sink(o.out_file);
  if (o.matrix) {
    if (o.perm.empty()) fail(Errc::kInvalidArgument, "--matrix needs --perm");
    const SchurLabel label = input_label(o);
    const PermutationGate perm = parse_permutation(o.perm, label.qubits());
    write_matrix_csv(sink.stream(), pqc_matrix(perm, label.path.endpoint().twice, label.twice_m()));
    return;
  }
  const auto phi = input_state(o);
  const LabelDistribution dist = schur_distribution(dense_from(*phi));
  if (csv(o, true)) {
    write_distribution_csv(sink.stream(), dist, !o.all_rows);
  } else {
    write_json(sink, distribution_to_json(dist, !o.all_rows));
  }
}

void cmd_sparsity_scan(const Options& o) {
  SparsityScanParams p;
  if (o.n_text.empty()) fail(Errc::kInvalidArgument, "--n is required (e.g. 4..10)");
  std::tie(p.n_lo, p.n_hi) = parse_range(o.n_text);
  p.paths_per_n = o.paths_per_n;
  p.perms_per_path = o.perms_per_path;
  p.seed = o.seed;
  p.c = o.c;
  p.d = o.d;
  p.threads = o.threads;
  const SparsityReport r = sparsity_scan(p);
  Sink sink(o.out_file);
  write_json(sink, sparsity_report_to_json(r, o.with_distributions));
}

void cmd_character_demo(const Options& o) {
  if (o.perm.empty()) fail(Errc::kInvalidArgument, "--perm is required");
  const int n = o.n_text.empty() ? 0 : parse_single_n(o.n_text);
  if (n == 0 && o.perm.find('(') != std::string::npos) fail(Errc::kInvalidArgument, "cycle notation needs --n");
  const PermutationGate perm = parse_permutation(o.perm, n);
  Json out = Json::array();
  const int m = perm.wires();
  if (o.twice_j) shape_for(m, {*o.twice_j});
  for (int tj = m % 2; tj <= m; tj += 2) {
    if (o.twice_j && *o.twice_j != tj) continue;
    const CharacterDemo demo = character_demo(perm, tj);
    Json j = character_demo_to_json(demo, perm);
    j["character"] = mn_character(shape_for(m, {tj}), cycle_type(perm)).str();
    out.push_back(j);
  }
  Sink sink(o.out_file);
  write_json(sink, out);
}

// ---------------------------------------------------------------------------

void add_state_flags(CLI::App* sub, Options& o) {
  sub->add_option("--n", o.n_text, "Qubit count (checked against the path)");
  sub->add_option("--in-path", o.in_path, "Input Yamanouchi symbol (n-1 bits)")->required();
  sub->add_option("--in-2m", o.in_2m, "Twice the input azimuthal number")->required();
  sub->add_option("--circuit", o.circuit_file, "Reversible circuit JSON file");
  sub->add_option("--perm", o.perm, "Permutation: cycles \"(1,2,3)(4,5)\", one-line list or {\"perm\":[...]}");
}

void add_output_flags(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", o.out_file, "Write to a file instead of stdout");
}

void add_estimator_flags(CLI::App* sub, Options& o) {
  sub->add_option("--estimator", o.estimator, "catoni or mom")->check(CLI::IsMember({"catoni", "mom", "median-of-means"}));
  sub->add_option("--marginal", o.marginal, "swap or product")->check(CLI::IsMember({"swap", "product"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classical simulation of SU(2) Schur sampling circuits"};
  app.require_subcommand(1);
  Options o;

  auto* amp = app.add_subcommand("amplitude", "<x| W |J, M>");
  add_state_flags(amp, o);
  amp->add_option("--x", o.x, "Computational basis bitstring, qubit 1 first")->required();
  add_output_flags(amp, o);

  auto* ss = app.add_subcommand("sample-state", "Exact samples of W |J, M> in the computational basis");
  add_state_flags(ss, o);
  ss->add_option("--samples", o.samples, "Number of samples");
  ss->add_option("--seed", o.seed, "RNG seed");
  add_output_flags(ss, o);

  auto* ov = app.add_subcommand("estimate-overlap", "Estimate <target| W |J, M>");
  add_state_flags(ov, o);
  ov->add_option("--target-path", o.target_path, "Target Yamanouchi symbol")->required();
  ov->add_option("--target-2m", o.target_2m, "Twice the target azimuthal number")->required();
  ov->add_option("--epsilon", o.epsilon, "Additive error");
  ov->add_option("--delta", o.delta, "Failure probability");
  ov->add_option("--seed", o.seed, "RNG seed");
  add_estimator_flags(ov, o);
  add_output_flags(ov, o);

  auto* mg = app.add_subcommand("estimate-marginal", "Estimate the output marginal of a path prefix");
  add_state_flags(mg, o);
  mg->add_option("--prefix", o.prefix, "Yamanouchi prefix")->required();
  mg->add_option("--epsilon", o.epsilon, "Additive error");
  mg->add_option("--delta", o.delta, "Failure probability");
  mg->add_option("--seed", o.seed, "RNG seed");
  add_estimator_flags(mg, o);
  add_output_flags(mg, o);

  auto* km = app.add_subcommand("km", "Find every path with output marginal above theta");
  add_state_flags(km, o);
  km->add_option("--theta", o.theta, "Heaviness threshold")->required();
  km->add_option("--gamma", o.gamma, "Overall failure probability");
  km->add_option("--epsilon", o.epsilon, "Additive error of the resolved (J, M) estimates");
  km->add_option("--delta", o.delta, "Failure probability of the resolved estimates");
  km->add_option("--seed", o.seed, "RNG seed");
  add_estimator_flags(km, o);
  add_output_flags(km, o);

  auto* sp = app.add_subcommand("sparse-sample", "Approximate samples from a near-sparse output");
  add_state_flags(sp, o);
  sp->add_option("--epsilon", o.epsilon, "Sparsity error");
  sp->add_option("--t", o.t, "Sparsity");
  sp->add_option("--gamma", o.gamma, "Failure probability");
  sp->add_option("--samples", o.samples, "Number of samples");
  sp->add_option("--seed", o.seed, "RNG seed");
  sp->add_option("--tail-sampler", o.tail_sampler, "rejection or gnw")->check(CLI::IsMember({"rejection", "gnw"}));
  add_estimator_flags(sp, o);
  add_output_flags(sp, o);

  auto* ex = app.add_subcommand("exact-dist", "Exact output distribution by the dense oracle");
  add_state_flags(ex, o);
  ex->add_flag("--matrix", o.matrix, "Transition matrix over the input J block (needs --perm)");
  ex->add_flag("--all", o.all_rows, "Include zero-probability labels");
  add_output_flags(ex, o);

  auto* sc = app.add_subcommand("sparsity-scan", "Sparsity criteria over random permutational instances");
  sc->add_option("--n", o.n_text, "Qubit range, e.g. 4..10")->required();
  sc->add_option("--paths-per-n", o.paths_per_n, "Random paths per n");
  sc->add_option("--perms-per-path", o.perms_per_path, "Random permutations per path");
  sc->add_option("--c", o.c, "Criterion C multiplier");
  sc->add_option("--d", o.d, "Criterion C exponent");
  sc->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  sc->add_flag("--with-distributions", o.with_distributions, "Include every instance and its output block");
  sc->add_option("--seed", o.seed, "RNG seed");
  sc->add_option("--out", o.out_file, "Write to a file instead of stdout");

  auto* ch = app.add_subcommand("character-demo", "Block trace of U_pi and the all-zero outcome probability");
  ch->add_option("--n", o.n_text, "Qubit count (checked against the permutation)");
  ch->add_option("--perm", o.perm, "Permutation")->required();
  ch->add_option("--twice-j", o.twice_j, "Only this 2J (default: every J)");
  ch->add_option("--out", o.out_file, "Write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (amp->parsed()) {
      cmd_amplitude(o);
    } else if (ss->parsed()) {
      require_seed(*ss);
      cmd_sample_state(o);
    } else if (ov->parsed()) {
      require_seed(*ov);
      cmd_estimate_overlap(o);
    } else if (mg->parsed()) {
      require_seed(*mg);
      cmd_estimate_marginal(o);
    } else if (km->parsed()) {
      require_seed(*km);
      cmd_km(o);
    } else if (sp->parsed()) {
      require_seed(*sp);
      cmd_sparse_sample(o);
    } else if (ex->parsed()) {
      cmd_exact_dist(o);
    } else if (sc->parsed()) {
      require_seed(*sc);
      cmd_sparsity_scan(o);
    } else if (ch->parsed()) {
      cmd_character_demo(o);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == Errc::kTooLarge ? kExitTooLarge : kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return 0;
}
