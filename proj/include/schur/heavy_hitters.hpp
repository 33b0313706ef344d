// Copyright 2026 The schurkm Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file heavy_hitters.hpp
 * @brief Level-by-level search of the branching diagram for every path whose
 * output marginal exceeds a threshold, then per-M resolution of those paths.
 */

#pragma once

#include <cstdint>
#include <vector>

#include "schur/estimation.hpp"
#include "schur/schur_states.hpp"
#include "schur/spin_combinatorics.hpp"

namespace schur {

struct KMParams {
  double theta = 0.1;
  double gamma = 0.1;
  std::uint64_t seed = 0;
  MeanEstimator estimator = MeanEstimator::kCatoni;
  MarginalMethod method = MarginalMethod::kProductForm;
};

/// Throws InvalidArgument unless theta > 0 and gamma in (0, 1).
void validate(const KMParams& p);

/// Failure probability of each marginal estimate. At most 4n/theta
/// estimates are made, so the union bound gives overall failure
/// 4n delta / theta <= gamma.
double km_per_call_delta(int n, double theta, double gamma);

struct HeavyEntry {
  SpinPath path;
  double estimate = 0.0;
};

struct HeavyList {
  /// Sorted by path. Empty when halted.
  std::vector<HeavyEntry> entries;
  /// |L_k| for k = 1 .. last level reached (index 0 is the root level).
  std::vector<std::size_t> level_widths;
  bool halted = false;
  /// Level k whose width exceeded 2/theta; 0 when not halted.
  int halted_level = 0;
  double theta = 0.0;
  double gamma = 0.0;
  double per_call_delta = 0.0;
  /// Union bound actually guaranteed by per_call_delta.
  double effective_gamma = 0.0;
  std::uint64_t estimate_calls = 0;
  std::uint64_t samples_used = 0;

  [[nodiscard]] bool contains(const SpinPath& path) const;
};

/// With probability >= 1 - gamma every returned path has p(J) >= theta/2 and
/// every path with p(J) > theta is returned (unless the search halts).
HeavyList km_search(const CtState& phi, const KMParams& params);

struct ResolvedEntry {
  SchurLabel label;
  double estimate = 0.0;
};

/// |<J, M|phi>|^2 for every path in `heavy` and every M of it, each within
/// epsilon with probability >= 1 - delta. Sorted by label.
std::vector<ResolvedEntry> resolve_heavy_probabilities(const CtState& phi, const HeavyList& heavy, double epsilon,
                                                       double delta, std::uint64_t seed,
                                                       MeanEstimator estimator = MeanEstimator::kCatoni);

}  // namespace schur
