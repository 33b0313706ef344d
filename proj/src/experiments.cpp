// Copyright 2026 The schurkm Authors
// SPDX-License-Identifier: Apache-2.0

#include "schur/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>
#include <utility>

#include "schur/error.hpp"
#include "schur/rng.hpp"

namespace schur {

namespace {

void check_experiment_size(int n) {
  if (n < 1) fail(Errc::kInvalidArgument, "qubit count must be >= 1");
  if (n > kMaxExperimentQubits) fail(Errc::kTooLarge, "experiments are limited to n <= 12");
  check_dense(n);
}

std::vector<SchurLabel> block_labels(int n, int twice_j) {
  std::vector<SchurLabel> out;
  for (const SpinPath& p : enumerate_paths(n)) {
    if (p.endpoint().twice != twice_j) continue;
    for (int tm = -twice_j; tm <= twice_j; tm += 2) out.push_back({p, {tm}});
  }
  return out;
}

void partitions_rec(int remaining, int max_part, std::vector<int>& cur, std::vector<CycleType>& out) {
  if (remaining == 0) {
    out.push_back({cur});
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    cur.push_back(part);
    partitions_rec(remaining - part, part, cur, out);
    cur.pop_back();
  }
}

// Two-bead abacus: beads at row1 + 1 and row2. A border strip of length r
// moves one bead down by r onto a free position; the sign counts the beads
// it jumps over.
using Beads = std::pair<int, int>;

BigInt mn_rec(Beads beads, const std::vector<int>& parts, std::size_t next,
              std::map<std::pair<Beads, std::size_t>, BigInt>& memo) {
  if (next == parts.size()) return 1;
  const auto key = std::make_pair(beads, next);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  const int r = parts[next];
  BigInt total = 0;
  const auto [hi, lo] = beads;
  if (hi - r >= 0 && hi - r != lo) {
    const bool jumps = lo > hi - r && lo < hi;
    const int a = std::max(hi - r, lo);
    const int b = std::min(hi - r, lo);
    const BigInt sub = mn_rec({a, b}, parts, next + 1, memo);
    total += jumps ? BigInt(-sub) : sub;
  }
  if (lo - r >= 0) total += mn_rec({hi, lo - r}, parts, next + 1, memo);
  memo.emplace(key, total);
  return total;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

void run_parallel(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> cursor{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = cursor++; i < count; i = cursor++) {
      try {
        body(i);
      } catch (...) {
        const std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  if (error) std::rethrow_exception(error);
}

void evaluate(SparsityInstance& inst, const SparsityScanParams& params) {
  const int n = inst.input.qubits();
  const int twice_j = inst.input.path.endpoint().twice;
  const LabelDistribution out = exact_output_distribution(inst.perm, inst.input);
  inst.block.clear();
  for (const auto& [label, v] : out.entries) {
    if (label.path.endpoint().twice == twice_j && label.twice_m() == inst.input.twice_m()) inst.block.push_back(v);
  }
  const double nn = n;
  inst.max_element = *std::max_element(inst.block.begin(), inst.block.end());
  inst.small_mass = 0.0;
  for (double v : inst.block) {
    if (v < 1.0 / (2.0 * nn * nn)) inst.small_mass += v;
  }
  inst.pass_a = inst.max_element > 1.0 / (2.0 * nn);
  inst.pass_b = inst.small_mass < 1.0 / (2.0 * nn);

  const std::size_t d = inst.block.size();
  inst.c_applicable = d > static_cast<std::size_t>(n);
  inst.pass_c = false;
  if (inst.c_applicable) {
    const double log_d = std::log2(static_cast<double>(d));
    const auto keep = static_cast<std::size_t>(std::floor(params.c * std::pow(log_d, params.d)));
    std::vector<double> sorted = inst.block;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double rest = 0.0;
    for (std::size_t i = keep; i < sorted.size(); ++i) rest += sorted[i];
    inst.pass_c = rest < 1.0 / log_d;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Cycle types and characters

int CycleType::size() const noexcept { return std::accumulate(parts.begin(), parts.end(), 0); }

CycleType make_cycle_type(std::vector<int> parts) {
  for (int p : parts) {
    if (p < 1) fail(Errc::kBadPartition, "cycle lengths must be >= 1");
  }
  std::sort(parts.begin(), parts.end(), std::greater<>());
  return {std::move(parts)};
}

CycleType cycle_type(const PermutationGate& p) { return make_cycle_type(p.cycle_type()); }

std::vector<CycleType> all_cycle_types(int n) {
  if (n < 1) fail(Errc::kBadPartition, "partitions need n >= 1");
  std::vector<CycleType> out;
  std::vector<int> cur;
  partitions_rec(n, n, cur, out);
  return out;
}

PermutationGate representative(const CycleType& type) {
  std::vector<int> one_line;
  int start = 0;
  for (int len : type.parts) {
    if (len < 1) fail(Errc::kBadPartition, "cycle lengths must be >= 1");
    for (int i = 0; i < len; ++i) one_line.push_back(start + (i + 1) % len);
    start += len;
  }
  return PermutationGate(std::move(one_line));
}

BigInt mn_character(const YoungShape2& shape, const CycleType& cycles) {
  if (shape.row2 < 0 || shape.row1 < shape.row2) fail(Errc::kBadPartition, "not a two-row partition");
  for (int p : cycles.parts) {
    if (p < 1) fail(Errc::kBadPartition, "cycle lengths must be >= 1");
  }
  if (cycles.size() != shape.boxes()) fail(Errc::kBadPartition, "cycle lengths must sum to the box count");
  std::map<std::pair<Beads, std::size_t>, BigInt> memo;
  return mn_rec({shape.row1 + 1, shape.row2}, cycles.parts, 0, memo);
}

// ---------------------------------------------------------------------------
// Output matrices

PqcMatrix pqc_matrix(const PermutationGate& perm, int twice_j, int twice_m) {
  const int n = perm.wires();
  check_experiment_size(n);
  shape_for(n, {twice_j});
  PqcMatrix out{n, twice_j, twice_m, {}, {}};
  for (const SpinPath& p : enumerate_paths(n)) {
    if (p.endpoint().twice == twice_j) out.paths.push_back(p);
  }
  make_label(out.paths.front(), twice_m);
  const std::size_t d = out.paths.size();
  out.values.assign(d * d, 0.0);
  for (std::size_t row = 0; row < d; ++row) {
    const LabelDistribution dist = exact_output_distribution(perm, {out.paths[row], {twice_m}});
    for (std::size_t col = 0; col < d; ++col) out.values[row * d + col] = dist.at({out.paths[col], {twice_m}});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sparsity scan

WilsonInterval wilson_interval(std::size_t passes, std::size_t trials) {
  if (trials == 0) return {0.0, 1.0};
  constexpr double z = 1.959963984540054;
  const double nt = static_cast<double>(trials);
  const double ph = static_cast<double>(passes) / nt;
  const double denom = 1.0 + z * z / nt;
  const double centre = (ph + z * z / (2.0 * nt)) / denom;
  const double half = z * std::sqrt(ph * (1.0 - ph) / nt + z * z / (4.0 * nt * nt)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

namespace {
double ratio(std::size_t a, std::size_t b) { return b == 0 ? 1.0 : static_cast<double>(a) / static_cast<double>(b); }
}  // namespace

double SparsityRow::fraction_a() const { return ratio(pass_a, instances); }
double SparsityRow::fraction_b() const { return ratio(pass_b, instances); }
double SparsityRow::fraction_c() const { return ratio(pass_c, c_applicable); }

SparsityReport sparsity_scan(const SparsityScanParams& params) {
  if (params.n_lo < 1 || params.n_hi < params.n_lo) fail(Errc::kInvalidArgument, "empty qubit range");
  if (params.paths_per_n < 1 || params.perms_per_path < 1) fail(Errc::kInvalidArgument, "instance counts must be >= 1");
  if (!(params.c >= 0.0) || !(params.d >= 0.0)) fail(Errc::kInvalidArgument, "criterion C constants must be >= 0");
  check_experiment_size(params.n_hi);

  SparsityReport report;
  report.params = params;
  for (int n = params.n_lo; n <= params.n_hi; ++n) {
    const std::vector<SpinPath> paths = enumerate_paths(n);
    for (int pi = 0; pi < params.paths_per_n; ++pi) {
      Rng rng(derive_seed(derive_seed(params.seed, static_cast<std::uint64_t>(n)), static_cast<std::uint64_t>(pi)));
      const SpinPath& path = paths[rng.below(paths.size())];
      const int twice_j = path.endpoint().twice;
      const int twice_m = 2 * static_cast<int>(rng.below(static_cast<std::uint64_t>(twice_j + 1))) - twice_j;
      for (int k = 0; k < params.perms_per_path; ++k) {
        SparsityInstance inst;
        inst.input = {path, {twice_m}};
        inst.perm = random_permutation(n, rng);
        report.instances.push_back(std::move(inst));
      }
    }
  }

  run_parallel(report.instances.size(), params.threads,
               [&](std::size_t i) { evaluate(report.instances[i], params); });

  for (int n = params.n_lo; n <= params.n_hi; ++n) {
    SparsityRow row;
    row.n = n;
    for (const auto& inst : report.instances) {
      if (inst.input.qubits() != n) continue;
      ++row.instances;
      row.pass_a += inst.pass_a ? 1 : 0;
      row.pass_b += inst.pass_b ? 1 : 0;
      row.c_applicable += inst.c_applicable ? 1 : 0;
      row.pass_c += inst.pass_c ? 1 : 0;
    }
    report.rows.push_back(row);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Character demo

CharacterDemo character_demo(const PermutationGate& perm, int twice_j) {
  const int n = perm.wires();
  check_experiment_size(n);
  shape_for(n, {twice_j});
  const std::vector<SchurLabel> labels = block_labels(n, twice_j);
  const ReversibleCircuit network = permutation_circuit(perm);
  const std::size_t dim = std::size_t{1} << n;

  CharacterDemo out{n, twice_j, 0.0, 0.0};
  // Column L of the prepared state is 2^{-n/2} |L>; the copy register keeps
  // columns apart, so only <L| U_pi |L> survives the inverse preparation.
  double zero_amplitude = 0.0;
  std::vector<double> moved(dim);
  for (const SchurLabel& label : labels) {
    const DenseState v = dense_schur_vector(label);
    double diag = 0.0;
    for (Bits y = 0; y < dim; ++y) diag += v.amplitudes[y] * v.amplitudes[perm.invert_apply(y)];
    out.trace += diag;

    std::fill(moved.begin(), moved.end(), 0.0);
    for (Bits x = 0; x < dim; ++x) moved[network.apply(x)] = v.amplitudes[x];
    zero_amplitude += dot(v.amplitudes, moved) / static_cast<double>(dim);
  }
  out.probability = zero_amplitude * zero_amplitude;
  return out;
}

}  // namespace schur
