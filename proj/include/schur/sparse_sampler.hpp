// Copyright 2026 The schurkm Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file sparse_sampler.hpp
 * @brief Approximate sampling of near-sparse output distributions: heavy
 * labels carry estimated probabilities, every other label shares a uniform
 * tail weight.
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "schur/heavy_hitters.hpp"
#include "schur/schur_states.hpp"
#include "schur/spin_combinatorics.hpp"

namespace schur {

enum class TailSampler { kRejection, kGnw };

struct SparsityParams {
  double epsilon = 0.1;
  int t = 1;
  /// Overall failure budget, split evenly between search and resolution.
  double gamma = 0.1;
  std::uint64_t sample_count = 0;
  std::uint64_t seed = 0;
  MeanEstimator estimator = MeanEstimator::kCatoni;
  MarginalMethod method = MarginalMethod::kProductForm;
  TailSampler tail = TailSampler::kRejection;

  [[nodiscard]] double theta() const noexcept { return epsilon / t; }
};

/// Throws InvalidArgument unless epsilon in (0, 1), t >= 1, gamma in (0, 1).
void validate(const SparsityParams& p);

/// min(epsilon / ((n+1) |L|), epsilon / (4t)); the second term alone when L
/// is empty.
double resolution_epsilon(double epsilon, int t, int n, std::size_t heavy_paths);

struct ApproxDistribution {
  int n = 0;
  HeavyList heavy;
  /// Heavy labels with their final (clamped, possibly rescaled) weights.
  std::vector<ResolvedEntry> estimates;
  /// Weight of each label whose path is not in L.
  double tail_weight = 0.0;
  /// alpha = 1 / alpha_denominator = 1 / (2^n - sum_L (2J+1)).
  BigInt alpha_denominator = 0;
  /// Sum of heavy weights after the floor rule.
  double heavy_mass = 0.0;
  double epsilon_prime = 0.0;
  /// True when 1 - sum_L p~ fell below 0 (or no tail exists) and the heavy
  /// weights were divided by their sum.
  bool rescaled = false;
  TailSampler tail = TailSampler::kRejection;
  std::vector<double> cumulative;

  /// "1/den", or "0" when the tail is empty.
  [[nodiscard]] std::string alpha_fraction() const;
  [[nodiscard]] double probability(const SchurLabel& label) const;
  /// heavy_mass + tail_weight * alpha_denominator.
  [[nodiscard]] double total_mass() const;
};

ApproxDistribution build_approx_distribution(const CtState& phi, const SparsityParams& p);

/// One draw: a heavy label with probability heavy_mass, else a uniform label
/// whose path is outside L.
SchurLabel sample(const ApproxDistribution& d, Rng& rng);
std::vector<SchurLabel> sample_many(const ApproxDistribution& d, std::uint64_t count, std::uint64_t seed);

/// Mass of p outside S = {labels with p > epsilon / t}. Throws OracleRequired
/// when p is empty.
double support_bound_check(const LabelDistribution& p, int t, double epsilon);

/// Mass outside the t largest entries of p.
double best_t_tail(const LabelDistribution& p, int t);
/// Some t-supported distribution lies within l1 distance epsilon of p; the
/// best one keeps the top t entries, so this is 2 * best_t_tail <= epsilon.
bool is_approximately_sparse(const LabelDistribution& p, int t, double epsilon);

/// ||d - p||_1 over all labels of p.
double l1_distance(const ApproxDistribution& d, const LabelDistribution& p);

}  // namespace schur
