// Copyright 2026 The schurkm Authors
// SPDX-License-Identifier: Apache-2.0

#include "schur/sparse_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "schur/error.hpp"

namespace schur {

namespace {

constexpr std::uint64_t kSearchStream = 1;
constexpr std::uint64_t kResolveStream = 2;

}  // namespace

void validate(const SparsityParams& p) {
  if (!(p.epsilon > 0.0 && p.epsilon < 1.0)) fail(Errc::kInvalidArgument, "epsilon must lie in (0, 1)");
  if (p.t < 1) fail(Errc::kInvalidArgument, "t must be >= 1");
  if (!(p.gamma > 0.0 && p.gamma < 1.0)) fail(Errc::kInvalidArgument, "gamma must lie in (0, 1)");
}

double resolution_epsilon(double epsilon, int t, int n, std::size_t heavy_paths) {
  const double by_t = epsilon / (4.0 * t);
  if (heavy_paths == 0) return by_t;
  return std::min(epsilon / ((n + 1.0) * static_cast<double>(heavy_paths)), by_t);
}

std::string ApproxDistribution::alpha_fraction() const {
  if (alpha_denominator == 0) return "0";
  return "1/" + alpha_denominator.str();
}

double ApproxDistribution::probability(const SchurLabel& label) const {
  if (heavy.contains(label.path)) {
    auto it = std::lower_bound(estimates.begin(), estimates.end(), label,
                               [](const ResolvedEntry& e, const SchurLabel& l) { return e.label < l; });
    return (it != estimates.end() && it->label == label) ? it->estimate : 0.0;
  }
  return tail_weight;
}

double ApproxDistribution::total_mass() const {
  return heavy_mass + tail_weight * static_cast<double>(alpha_denominator);
}

ApproxDistribution build_approx_distribution(const CtState& phi, const SparsityParams& p) {
  validate(p);
  const int n = phi.num_qubits();
  ApproxDistribution d;
  d.n = n;
  d.tail = p.tail;

  KMParams km;
  km.theta = p.theta();
  km.gamma = p.gamma / 2;
  km.seed = derive_seed(p.seed, kSearchStream);
  km.estimator = p.estimator;
  km.method = p.method;
  d.heavy = km_search(phi, km);

  BigInt covered = 0;
  for (const auto& e : d.heavy.entries) covered += e.path.endpoint().twice + 1;
  d.alpha_denominator = (BigInt(1) << n) - covered;

  d.epsilon_prime = resolution_epsilon(p.epsilon, p.t, n, d.heavy.entries.size());
  if (!d.heavy.entries.empty()) {
    // Union bound over every resolved label.
    const double delta = std::min(0.5, (p.gamma / 2) / static_cast<double>(covered));
    d.estimates = resolve_heavy_probabilities(phi, d.heavy, d.epsilon_prime, delta,
                                              derive_seed(p.seed, kResolveStream), p.estimator);
  }
  double b = 0.0;
  for (auto& e : d.estimates) {
    e.estimate = std::clamp(e.estimate, 0.0, 1.0);
    b += e.estimate;
  }

  const bool has_tail = d.alpha_denominator > 0;
  if (has_tail && b <= 1.0) {
    d.heavy_mass = b;
    d.tail_weight = (1.0 - b) / static_cast<double>(d.alpha_denominator);
  } else {
    d.rescaled = true;
    d.tail_weight = 0.0;
    if (b > 0.0) {
      for (auto& e : d.estimates) e.estimate /= b;
    } else {
      // Every label is heavy yet no mass was seen: fall back to uniform.
      for (auto& e : d.estimates) e.estimate = 1.0 / static_cast<double>(d.estimates.size());
    }
    d.heavy_mass = 0.0;
    for (const auto& e : d.estimates) d.heavy_mass += e.estimate;
  }
  double acc = 0.0;
  d.cumulative.reserve(d.estimates.size());
  for (const auto& e : d.estimates) {
    acc += e.estimate;
    d.cumulative.push_back(acc);
  }
  return d;
}

SchurLabel sample(const ApproxDistribution& d, Rng& rng) {
  const double u = rng.uniform01();
  const double tail_mass = d.tail_weight * static_cast<double>(d.alpha_denominator);
  if (!d.estimates.empty() && (tail_mass <= 0.0 || u < d.heavy_mass)) {
    // Heavy table; rescale u into [0, heavy_mass).
    const double target = tail_mass <= 0.0 ? u * d.heavy_mass : u;
    auto it = std::upper_bound(d.cumulative.begin(), d.cumulative.end(), target);
    if (it == d.cumulative.end()) --it;
    return d.estimates[static_cast<std::size_t>(it - d.cumulative.begin())].label;
  }
  for (;;) {
    SchurLabel l = d.tail == TailSampler::kGnw ? sample_uniform_jm_gnw(d.n, rng) : sample_uniform_jm_rejection(d.n, rng);
    if (!d.heavy.contains(l.path)) return l;
  }
}

std::vector<SchurLabel> sample_many(const ApproxDistribution& d, std::uint64_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<SchurLabel> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(sample(d, rng));
  return out;
}

double support_bound_check(const LabelDistribution& p, int t, double epsilon) {
  if (p.entries.empty()) fail(Errc::kOracleRequired, "support check needs an exact distribution");
  if (t < 1) fail(Errc::kInvalidArgument, "t must be >= 1");
  const double cut = epsilon / t;
  double off = 0.0;
  for (const auto& [label, v] : p.entries) {
    if (!(v > cut)) off += v;
  }
  return off;
}

double best_t_tail(const LabelDistribution& p, int t) {
  if (p.entries.empty()) fail(Errc::kOracleRequired, "sparsity check needs an exact distribution");
  std::vector<double> v;
  v.reserve(p.entries.size());
  for (const auto& e : p.entries) v.push_back(e.second);
  std::sort(v.begin(), v.end(), std::greater<>());
  double tail = 0.0;
  for (std::size_t i = static_cast<std::size_t>(t); i < v.size(); ++i) tail += v[i];
  return tail;
}

bool is_approximately_sparse(const LabelDistribution& p, int t, double epsilon) {
  return 2.0 * best_t_tail(p, t) <= epsilon;
}

double l1_distance(const ApproxDistribution& d, const LabelDistribution& p) {
  double s = 0.0;
  for (const auto& [label, v] : p.entries) s += std::abs(d.probability(label) - v);
  return s;
}

}  // namespace schur
