// Copyright 2026 The schurkm Authors
// SPDX-License-Identifier: Apache-2.0

#include "schur/sparse_sampler.hpp"

#include <cmath>
#include <map>

#include "doctest.h"
#include "schur/circuits.hpp"
#include "schur/error.hpp"
#include "test_support.hpp"

using namespace schur;

namespace {

std::vector<SchurLabel> all_labels(int n) {
  std::vector<SchurLabel> out;
  for (const auto& p : enumerate_paths(n)) {
    for (int m = -p.endpoint().twice; m <= p.endpoint().twice; m += 2) out.push_back(make_label(p, m));
  }
  return out;
}

// Chi-square of draws from d against d's own law.
double self_consistency_pvalue(const ApproxDistribution& d, std::uint64_t seed, int draws) {
  const auto labels = all_labels(d.n);
  std::map<SchurLabel, std::size_t> index;
  for (const auto& l : labels) index.emplace(l, index.size());
  std::vector<double> obs(labels.size(), 0.0);
  std::vector<double> expected(labels.size(), 0.0);
  for (const auto& l : sample_many(d, static_cast<std::uint64_t>(draws), seed)) obs[index.at(l)] += 1.0;
  for (const auto& l : labels) expected[index.at(l)] = draws * d.probability(l);
  return testing::chi_square_pvalue(obs, expected);
}

}  // namespace

TEST_CASE("resolution precision") {
  CHECK(resolution_epsilon(0.2, 4, 3, 2) == doctest::Approx(0.0125));
  CHECK(resolution_epsilon(0.2, 4, 3, 0) == doctest::Approx(0.0125));
  CHECK(resolution_epsilon(0.2, 1, 3, 1) == doctest::Approx(0.05));
}

TEST_CASE("alpha for a single stretched path") {
  const SchurCtState s(make_label(validate_path("11"), 1));
  const ApproxDistribution d = build_approx_distribution(s, {0.2, 2, 0.1, 0, 5});
  REQUIRE(d.heavy.entries.size() == 1);
  CHECK(d.alpha_fraction() == "1/4");
  CHECK(std::abs(d.total_mass() - 1.0) <= 1e-12);
  CHECK(d.probability(make_label(validate_path("11"), 1)) >= 0.95);
  CHECK(d.tail_weight <= 0.05 / 4);
  Rng rng(1);
  int hits = 0;
  for (int i = 0; i < 1000; ++i) hits += sample(d, rng) == make_label(validate_path("11"), 1) ? 1 : 0;
  CHECK(hits >= 950);
}

TEST_CASE("pure tail is uniform over all labels") {
  for (auto tail : {TailSampler::kRejection, TailSampler::kGnw}) {
    ApproxDistribution d;
    d.n = 5;
    d.alpha_denominator = 32;
    d.tail_weight = 1.0 / 32;
    d.tail = tail;
    CHECK(d.total_mass() == doctest::Approx(1.0));
    CHECK(self_consistency_pvalue(d, 7, 100000) > 0.01);
  }
}

TEST_CASE("delta distribution always returns its label") {
  const SchurLabel l = make_label(validate_path("1011"), -1);
  const SchurCtState s(l);
  const ApproxDistribution d = build_approx_distribution(s, {0.1, 1, 0.1, 0, 3});
  Rng rng(2);
  int hits = 0;
  for (int i = 0; i < 2000; ++i) hits += sample(d, rng) == l ? 1 : 0;
  CHECK(hits >= 1900);
  CHECK(d.probability(l) >= 0.97);
}

TEST_CASE("floor rule when heavy estimates exceed one") {
  // Every path heavy at n = 2 leaves no tail; estimates get renormalized.
  const SchurCtState s(make_label(validate_path("0"), 0));
  const ApproxDistribution d = build_approx_distribution(s, {0.5, 1, 0.1, 0, 4});
  CHECK(std::abs(d.total_mass() - 1.0) <= 1e-12);
  CHECK(d.tail_weight >= 0.0);
}

TEST_CASE("sampled law matches the built distribution") {
  Rng rng(3);
  for (int run = 0; run < 6; ++run) {
    const int n = 4 + static_cast<int>(rng.below(3));
    const auto paths = enumerate_paths(n);
    const SpinPath& p = paths[static_cast<std::size_t>(rng.below(paths.size()))];
    const SchurLabel in = make_label(p, p.endpoint().twice);
    const PermutedState phi(random_permutation(n, rng), std::make_shared<SchurCtState>(in));
    SparsityParams params{0.1, 2, 0.1, 0, rng.next_u64()};
    params.tail = run % 2 == 0 ? TailSampler::kRejection : TailSampler::kGnw;
    const ApproxDistribution d = build_approx_distribution(phi, params);
    CHECK(std::abs(d.total_mass() - 1.0) <= 1e-12);
    CHECK(self_consistency_pvalue(d, rng.next_u64(), 100000) > 0.01);
  }
}

TEST_CASE("l1 error on permutational instances") {
  Rng rng(4);
  int ok = 0;
  int sparse = 0;
  for (int run = 0; run < 8; ++run) {
    const int n = 4;
    const auto paths = enumerate_paths(n);
    const SpinPath& p = paths[static_cast<std::size_t>(rng.below(paths.size()))];
    const SchurLabel in = make_label(p, p.endpoint().twice);
    const PermutationGate pi = random_permutation(n, rng);
    const PermutedState phi(pi, std::make_shared<SchurCtState>(in));
    const LabelDistribution oracle = exact_output_distribution(pi, in);
    const double eps = 0.1;
    int t = 1;
    while (!is_approximately_sparse(oracle, t, eps)) ++t;
    ++sparse;
    const ApproxDistribution d = build_approx_distribution(phi, {eps, t, 0.1, 0, rng.next_u64()});
    ok += l1_distance(d, oracle) <= 6 * eps ? 1 : 0;
  }
  CHECK(ok >= sparse - 1);
}

TEST_CASE("support bound") {
  LabelDistribution exact;
  exact.n = 2;
  exact.entries = {{make_label(validate_path("0"), 0), 0.5},
                   {make_label(validate_path("1"), -2), 0.0},
                   {make_label(validate_path("1"), 0), 0.5},
                   {make_label(validate_path("1"), 2), 0.0}};
  CHECK(support_bound_check(exact, 2, 0.5) == 0.0);
  CHECK(is_approximately_sparse(exact, 2, 0.01));

  LabelDistribution uniform;
  uniform.n = 6;
  for (const auto& l : all_labels(6)) uniform.entries.emplace_back(l, 1.0 / 64);
  CHECK_FALSE(is_approximately_sparse(uniform, 4, 0.4));

  Rng rng(5);
  for (int run = 0; run < 30; ++run) {
    const auto paths = enumerate_paths(6);
    const SpinPath& p = paths[static_cast<std::size_t>(rng.below(paths.size()))];
    const SchurLabel in = make_label(p, p.endpoint().twice);
    const LabelDistribution oracle = exact_output_distribution(random_permutation(6, rng), in);
    for (int t = 1; t <= 12; ++t) {
      for (double eps : {0.05, 0.1, 0.2}) {
        if (is_approximately_sparse(oracle, t, eps)) CHECK(support_bound_check(oracle, t, eps) <= 2 * eps + 1e-12);
      }
    }
  }
  try {
    (void)support_bound_check(LabelDistribution{}, 1, 0.1);
    FAIL("expected OracleRequired");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kOracleRequired);
  }
}
