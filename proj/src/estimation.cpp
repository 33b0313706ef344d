// Copyright 2026 The schurkm Authors
// SPDX-License-Identifier: Apache-2.0

#include "schur/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include <boost/math/tools/toms748_solve.hpp>

#include "schur/circuits.hpp"
#include "schur/error.hpp"

namespace schur {

namespace {

// Catoni's influence function: log(1 + x + x^2/2) for x >= 0, odd extension.
double catoni_psi(double x) {
  return x >= 0 ? std::log1p(x + 0.5 * x * x) : -std::log1p(-x + 0.5 * x * x);
}

double median(std::vector<double> v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  if (v.size() % 2 == 1) return v[mid];
  const double hi = v[mid];
  const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lo + hi);
}

void check_prefix(const SpinPath& prefix, int n) {
  if (prefix.qubits() > n) {
    fail(Errc::kPrefixTooLong, "prefix on " + std::to_string(prefix.qubits()) + " qubits exceeds state on " +
                                   std::to_string(n));
  }
}

// Accumulates the per-M variables of one shared stream without storing the
// zeros: batch sums for median-of-means, nonzero values for Catoni.
struct SparseStream {
  const EstimationParams& params;
  std::uint64_t batch = 0;
  std::vector<double> batch_sums;
  std::vector<double> nonzero;

  explicit SparseStream(const EstimationParams& p) : params(p) {
    if (p.estimator == MeanEstimator::kMedianOfMeans) {
      batch = mom_batch_size(p.epsilon);
      batch_sums.assign(mom_batch_count(p.delta), 0.0);
    }
  }

  void add(std::uint64_t index, double z) {
    if (z == 0.0) return;
    if (params.estimator == MeanEstimator::kMedianOfMeans) {
      batch_sums[index / batch] += z;
    } else {
      nonzero.push_back(z);
    }
  }

  [[nodiscard]] double value(std::uint64_t total) const {
    if (params.estimator == MeanEstimator::kMedianOfMeans) {
      std::vector<double> means;
      means.reserve(batch_sums.size());
      for (double s : batch_sums) means.push_back(s / static_cast<double>(batch));
      return median(std::move(means));
    }
    return catoni_mean(nonzero, total - nonzero.size(), params.delta);
  }
};

}  // namespace

void validate(const EstimationParams& p) {
  if (!(p.epsilon > 0.0 && p.epsilon <= 2.0)) fail(Errc::kInvalidArgument, "epsilon must lie in (0, 2]");
  if (!(p.delta > 0.0 && p.delta < 1.0)) fail(Errc::kInvalidArgument, "delta must lie in (0, 1)");
}

std::uint64_t mom_batch_size(double epsilon) {
  return static_cast<std::uint64_t>(std::ceil(8.0 / (epsilon * epsilon)));
}

std::uint64_t mom_batch_count(double delta) {
  return static_cast<std::uint64_t>(std::ceil(18.0 * std::log(2.0 / delta)));
}

std::uint64_t catoni_sample_count(double epsilon, double delta) {
  const double l = std::log(2.0 / delta);
  // n > 2L and sqrt(2L / (n - 2L)) <= epsilon.
  return static_cast<std::uint64_t>(std::ceil(2.0 * l / (epsilon * epsilon) + 2.0 * l)) + 1;
}

std::uint64_t required_samples(const EstimationParams& p) {
  validate(p);
  if (p.estimator == MeanEstimator::kMedianOfMeans) return mom_batch_size(p.epsilon) * mom_batch_count(p.delta);
  return catoni_sample_count(p.epsilon, p.delta);
}

double median_of_means(std::span<const double> z, std::uint64_t batch, std::uint64_t batches) {
  if (batch == 0 || batches == 0 || z.size() < batch * batches) {
    fail(Errc::kInvalidArgument, "median_of_means needs batch * batches samples");
  }
  std::vector<double> means(batches);
  for (std::uint64_t b = 0; b < batches; ++b) {
    double s = 0.0;
    for (std::uint64_t i = 0; i < batch; ++i) s += z[b * batch + i];
    means[b] = s / static_cast<double>(batch);
  }
  return median(std::move(means));
}

double catoni_mean(std::span<const double> z, std::uint64_t extra_zeros, double delta) {
  const double total = static_cast<double>(z.size() + extra_zeros);
  const double l = std::log(2.0 / delta);
  if (!(total > 2.0 * l)) fail(Errc::kInvalidArgument, "Catoni estimator needs more than 2 ln(2/delta) samples");
  const double alpha = std::sqrt(2.0 * l / (total * (1.0 + 2.0 * l / (total - 2.0 * l))));
  double lo = extra_zeros > 0 ? 0.0 : z.empty() ? 0.0 : z[0];
  double hi = lo;
  for (double v : z) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const auto zeros = static_cast<double>(extra_zeros);
  // The score is non-increasing in theta with a sign change on [lo, hi].
  auto score = [&](double theta) {
    double s = zeros * catoni_psi(-alpha * theta);
    for (double v : z) s += catoni_psi(alpha * (v - theta));
    return s;
  };
  if (hi <= lo) return lo;
  const double f_lo = score(lo);
  const double f_hi = score(hi);
  if (f_lo <= 0.0) return lo;
  if (f_hi >= 0.0) return hi;
  std::uintmax_t max_iter = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(score, lo, hi, f_lo, f_hi,
                                                        boost::math::tools::eps_tolerance<double>(48), max_iter);
  return 0.5 * (a + b);
}

double combine(std::span<const double> z, const EstimationParams& p) {
  if (p.estimator == MeanEstimator::kMedianOfMeans) {
    return median_of_means(z, mom_batch_size(p.epsilon), mom_batch_count(p.delta));
  }
  return catoni_mean(z, 0, p.delta);
}

// ---------------------------------------------------------------------------
// Overlaps

double overlap_sample(const CtState& phi, const CtState& psi, Rng& rng) {
  const Bits x = phi.sample(rng);
  const double a = phi.amplitude(x);
  if (a == 0.0) return 0.0;
  return psi.amplitude(x) / a;
}

Estimate estimate_overlap(const CtState& phi, const CtState& psi, const EstimationParams& p) {
  validate(p);
  if (phi.num_qubits() != psi.num_qubits()) fail(Errc::kDimensionMismatch, "states have different qubit counts");
  const std::uint64_t total = required_samples(p);
  Rng rng(p.seed);
  std::vector<double> z(total);
  for (auto& v : z) v = overlap_sample(phi, psi, rng);
  return {combine(z, p), total};
}

// ---------------------------------------------------------------------------
// Marginals

double marginal_product_sample(const SpinPath& prefix, const CtState& phi, Rng& rng) {
  const int k = prefix.qubits();
  const int twice_j = prefix.endpoint().twice;
  const Bits x = phi.sample(rng);
  const Bits a = x & low_mask(k);
  const int twice_m = twice_weight_m(a, k);
  if (std::abs(twice_m) > twice_j) return 0.0;
  const SchurLabel small{prefix, {twice_m}};
  const double psi_a = amplitude(a, small);
  if (psi_a == 0.0) return 0.0;
  const double phi_x = phi.amplitude(x);
  if (phi_x == 0.0) return 0.0;
  const Bits a2 = sample_basis_state(small, rng);
  const double phi_x2 = phi.amplitude((x & ~low_mask(k)) | a2);
  return psi_a * phi_x2 / (phi_x * amplitude(a2, small));
}

SwapPair swap_overlap_pair(const SpinPath& prefix, int twice_m, std::shared_ptr<const CtState> phi) {
  const int n = phi->num_qubits();
  const int k = prefix.qubits();
  check_prefix(prefix, n);
  if (n + k > kMaxWires) fail(Errc::kTooLarge, "swap construction needs n + k <= 64 wires");
  // Output bit i takes phi's qubit i + k for the first n - k positions and
  // qubit i - (n - k) after that.
  std::vector<int> rotate(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) rotate[static_cast<std::size_t>(i)] = i < n - k ? i + k : i - (n - k);
  auto moved = std::make_shared<PermutedState>(PermutationGate(std::move(rotate)), std::move(phi));
  auto first = std::make_shared<ProductState>(std::move(moved),
                                              std::make_shared<SchurCtState>(make_label(prefix, twice_m)));
  auto second = std::make_shared<PermutedState>(build_uswaps(n, k), first);
  return {std::move(first), std::move(second)};
}

Estimate estimate_marginal(const SpinPath& prefix, std::shared_ptr<const CtState> phi, const EstimationParams& p,
                           MarginalMethod method) {
  validate(p);
  if (!phi) fail(Errc::kInvalidArgument, "null state");
  check_prefix(prefix, phi->num_qubits());
  Estimate out;
  if (method == MarginalMethod::kProductForm) {
    const std::uint64_t total = required_samples(p);
    Rng rng(p.seed);
    std::vector<double> z(total);
    for (auto& v : z) v = marginal_product_sample(prefix, *phi, rng);
    out = {combine(z, p), total};
  } else {
    const int twice_j = prefix.endpoint().twice;
    const int count = twice_j + 1;
    EstimationParams sub = p;
    sub.epsilon = p.epsilon / count;
    sub.delta = p.delta / count;
    for (int i = 0; i < count; ++i) {
      const int twice_m = 2 * i - twice_j;
      sub.seed = derive_seed(p.seed, static_cast<std::uint64_t>(i));
      const SwapPair pair = swap_overlap_pair(prefix, twice_m, phi);
      const Estimate e = estimate_overlap(*pair.first, *pair.second, sub);
      out.value += e.value;
      out.samples_used += e.samples_used;
    }
  }
  out.value = std::clamp(out.value, 0.0, 1.0);
  return out;
}

namespace {

// Non-owning view for callers holding a plain reference.
struct BorrowedState final : CtState {
  const CtState& inner;
  explicit BorrowedState(const CtState& s) : inner(s) {}
  [[nodiscard]] int num_qubits() const override { return inner.num_qubits(); }
  [[nodiscard]] double amplitude(Bits x) const override { return inner.amplitude(x); }
  Bits sample(Rng& rng) const override { return inner.sample(rng); }
};

}  // namespace

Estimate estimate_marginal(const SpinPath& prefix, const CtState& phi, const EstimationParams& p,
                           MarginalMethod method) {
  return estimate_marginal(prefix, std::make_shared<BorrowedState>(phi), p, method);
}

// ---------------------------------------------------------------------------
// Full-path labels

double label_sample(const SpinPath& path, const CtState& phi, Rng& rng, int& twice_m_hit) {
  const int n = path.qubits();
  const Bits x = phi.sample(rng);
  twice_m_hit = twice_weight_m(x, n);
  if (std::abs(twice_m_hit) > path.endpoint().twice) return 0.0;
  const SchurLabel label{path, {twice_m_hit}};
  const double psi_x = amplitude(x, label);
  if (psi_x == 0.0) return 0.0;
  const double phi_x = phi.amplitude(x);
  if (phi_x == 0.0) return 0.0;
  const Bits x2 = sample_basis_state(label, rng);
  return psi_x * phi.amplitude(x2) / (phi_x * amplitude(x2, label));
}

std::vector<Estimate> estimate_path_probabilities(const SpinPath& path, const CtState& phi,
                                                  const EstimationParams& p) {
  validate(p);
  if (path.qubits() != phi.num_qubits()) fail(Errc::kDimensionMismatch, "path and state have different qubit counts");
  const int twice_j = path.endpoint().twice;
  const std::uint64_t total = required_samples(p);
  std::vector<SparseStream> streams(static_cast<std::size_t>(twice_j + 1), SparseStream(p));
  Rng rng(p.seed);
  for (std::uint64_t i = 0; i < total; ++i) {
    int hit = 0;
    const double z = label_sample(path, phi, rng, hit);
    if (z != 0.0) streams[static_cast<std::size_t>((hit + twice_j) / 2)].add(i, z);
  }
  std::vector<Estimate> out;
  out.reserve(streams.size());
  for (const auto& s : streams) out.push_back({std::clamp(s.value(total), 0.0, 1.0), total});
  return out;
}

Estimate estimate_label_probability(const SchurLabel& label, const CtState& phi, const EstimationParams& p) {
  const auto all = estimate_path_probabilities(label.path, phi, p);
  return all[static_cast<std::size_t>((label.twice_m() + label.path.endpoint().twice) / 2)];
}

}  // namespace schur
