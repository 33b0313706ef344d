// Copyright 2026 The schurkm Authors
// SPDX-License-Identifier: Apache-2.0

#include "schur/heavy_hitters.hpp"

#include <algorithm>
#include <cmath>

#include "schur/error.hpp"

namespace schur {

namespace {

constexpr double kDeltaMargin = 0.01;

}  // namespace

void validate(const KMParams& p) {
  if (!(p.theta > 0.0) || !std::isfinite(p.theta)) fail(Errc::kInvalidArgument, "theta must be positive");
  if (!(p.gamma > 0.0 && p.gamma < 1.0)) fail(Errc::kInvalidArgument, "gamma must lie in (0, 1)");
}

double km_per_call_delta(int n, double theta, double gamma) {
  const double base = theta / (4.0 * n);
  const double tight = gamma * theta / (4.0 * n * (1.0 + kDeltaMargin));
  return std::min({base, tight, 0.5});
}

bool HeavyList::contains(const SpinPath& path) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), path,
                             [](const HeavyEntry& e, const SpinPath& p) { return e.path < p; });
  return it != entries.end() && it->path == path;
}

HeavyList km_search(const CtState& phi, const KMParams& params) {
  validate(params);
  const int n = phi.num_qubits();
  HeavyList out;
  out.theta = params.theta;
  out.gamma = params.gamma;
  out.per_call_delta = km_per_call_delta(n, params.theta, params.gamma);
  out.effective_gamma = std::min(1.0, out.per_call_delta * 4.0 * n / params.theta);

  std::vector<HeavyEntry> level = {{SpinPath{}, 1.0}};
  out.level_widths.push_back(1);
  if (n == 1) {
    out.entries = level;
    return out;
  }

  const double width_cap = 2.0 / params.theta;
  EstimationParams est;
  est.epsilon = std::min(params.theta / 4.0, 2.0);
  est.delta = out.per_call_delta;
  est.estimator = params.estimator;

  for (int k = 2; k <= n; ++k) {
    std::vector<HeavyEntry> next;
    for (const auto& parent : level) {
      for (bool up : {false, true}) {
        if (!up && parent.path.endpoint().twice == 0) continue;
        const SpinPath child = parent.path.extended(up);
        est.seed = derive_seed(params.seed, out.estimate_calls++);
        const Estimate e = estimate_marginal(child, phi, est, params.method);
        out.samples_used += e.samples_used;
        // Ties at exactly 3/4 theta are kept.
        if (e.value >= 0.75 * params.theta) next.push_back({child, e.value});
      }
    }
    out.level_widths.push_back(next.size());
    if (static_cast<double>(next.size()) > width_cap) {
      out.halted = true;
      out.halted_level = k;
      return out;
    }
    level = std::move(next);
  }
  std::sort(level.begin(), level.end(), [](const HeavyEntry& a, const HeavyEntry& b) { return a.path < b.path; });
  out.entries = std::move(level);
  return out;
}

std::vector<ResolvedEntry> resolve_heavy_probabilities(const CtState& phi, const HeavyList& heavy, double epsilon,
                                                       double delta, std::uint64_t seed, MeanEstimator estimator) {
  std::vector<ResolvedEntry> out;
  EstimationParams est{epsilon, delta, 0, estimator};
  validate(est);
  std::uint64_t index = 0;
  for (const auto& entry : heavy.entries) {
    est.seed = derive_seed(seed, index++);
    const auto probs = estimate_path_probabilities(entry.path, phi, est);
    const int tj = entry.path.endpoint().twice;
    for (int i = 0; i <= tj; ++i) {
      out.push_back({SchurLabel{entry.path, {2 * i - tj}}, probs[static_cast<std::size_t>(i)].value});
    }
  }
  std::sort(out.begin(), out.end(), [](const ResolvedEntry& a, const ResolvedEntry& b) { return a.label < b.label; });
  return out;
}

}  // namespace schur
