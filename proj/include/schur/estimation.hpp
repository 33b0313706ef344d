// Copyright 2026 The schurkm Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file estimation.hpp
 * @brief Monte Carlo (epsilon, delta) estimates of overlaps between
 * tractable states and of path-prefix marginals.
 *
 * Every estimator averages a ratio variable Z with E[Z] equal to the target
 * and E[Z^2] <= 1, so the sample counts below depend only on (epsilon, delta).
 */

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "schur/rng.hpp"
#include "schur/schur_states.hpp"
#include "schur/spin_combinatorics.hpp"

namespace schur {

enum class MeanEstimator {
  /// Median of ceil(18 ln(2/delta)) batch means of ceil(8/epsilon^2) samples.
  kMedianOfMeans,
  /// Catoni M-estimator with variance bound 1; ceil(2L/epsilon^2 + 2L) + 1
  /// samples for L = ln(2/delta).
  kCatoni,
};

struct EstimationParams {
  double epsilon = 0.05;
  double delta = 0.1;
  std::uint64_t seed = 0;
  MeanEstimator estimator = MeanEstimator::kMedianOfMeans;
};

/// Throws InvalidArgument unless epsilon in (0, 2] and delta in (0, 1).
void validate(const EstimationParams& p);

struct Estimate {
  double value = 0.0;
  std::uint64_t samples_used = 0;
};

std::uint64_t mom_batch_size(double epsilon);
std::uint64_t mom_batch_count(double delta);
std::uint64_t catoni_sample_count(double epsilon, double delta);
/// Number of Z draws the chosen estimator needs.
std::uint64_t required_samples(const EstimationParams& p);

/// Median of `batches` means over consecutive runs of `batch` values.
double median_of_means(std::span<const double> z, std::uint64_t batch, std::uint64_t batches);
/// Catoni estimate from z plus `extra_zeros` implicit zero samples.
double catoni_mean(std::span<const double> z, std::uint64_t extra_zeros, double delta);
/// Applies p.estimator to exactly required_samples(p) values.
double combine(std::span<const double> z, const EstimationParams& p);

/// One draw of psi(x) / phi(x) with x ~ phi^2.
double overlap_sample(const CtState& phi, const CtState& psi, Rng& rng);

/// Estimate of <phi|psi>. Throws DimensionMismatch.
Estimate estimate_overlap(const CtState& phi, const CtState& psi, const EstimationParams& p);

enum class MarginalMethod {
  /// One overlap per azimuthal value m between (phi~ (x) |j, m>) and
  /// U_SWAPS applied to it, each to epsilon/(2j+1), delta/(2j+1).
  kSwapOverlaps,
  /// Single ratio variable drawing x ~ phi^2 and a' ~ |j, m(x)>^2.
  kProductForm,
};

/// Unbiased draw of p(prefix) for the product form.
double marginal_product_sample(const SpinPath& prefix, const CtState& phi, Rng& rng);

/// The two (n+k)-qubit states whose overlap is <phi| (|j,m><j,m| (x) I) |phi>:
/// first = phi~ (x) |j, m> where phi~ moves phi's first k qubits behind the
/// rest, second = U_SWAPS first.
struct SwapPair {
  std::shared_ptr<const CtState> first;
  std::shared_ptr<const CtState> second;
};
SwapPair swap_overlap_pair(const SpinPath& prefix, int twice_m, std::shared_ptr<const CtState> phi);

/// p(prefix) = <phi| Pi(prefix) |phi>, clamped to [0, 1]. Throws
/// PrefixTooLong if the prefix has more qubits than phi.
Estimate estimate_marginal(const SpinPath& prefix, const CtState& phi, const EstimationParams& p,
                           MarginalMethod method = MarginalMethod::kSwapOverlaps);
Estimate estimate_marginal(const SpinPath& prefix, std::shared_ptr<const CtState> phi, const EstimationParams& p,
                           MarginalMethod method = MarginalMethod::kSwapOverlaps);

/// Draw of |<label|phi>|^2 specialized to a full path: Z is nonzero only when
/// the weight of x equals 2M. Returns the M hit (in `twice_m_hit`) and Z.
double label_sample(const SpinPath& path, const CtState& phi, Rng& rng, int& twice_m_hit);

/// |<label|phi>|^2 for one label, clamped to [0, 1].
Estimate estimate_label_probability(const SchurLabel& label, const CtState& phi, const EstimationParams& p);

/// |<path, M|phi>|^2 for every M of the path from one shared sample stream,
/// each within epsilon w.p. >= 1 - delta. Index i holds 2M = 2i - 2J.
std::vector<Estimate> estimate_path_probabilities(const SpinPath& path, const CtState& phi,
                                                  const EstimationParams& p);

}  // namespace schur
