// Copyright 2026 The schurkm Authors
// SPDX-License-Identifier: Apache-2.0

#include "schur/spin_combinatorics.hpp"

#include <map>
#include <set>

#include "doctest.h"
#include "schur/error.hpp"
#include "test_support.hpp"

using namespace schur;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an exception");
  return Errc::kInvalidArgument;
}

}  // namespace

TEST_CASE("validate_path accepts ballot words and locates the first violation") {
  const SpinPath p = validate_path("101");
  CHECK(p.qubits() == 4);
  CHECK(p.endpoint().twice == 2);
  CHECK(p.twice_j_at(1) == 1);
  CHECK(p.twice_j_at(2) == 2);
  CHECK(p.twice_j_at(3) == 1);
  CHECK(p.to_string() == "101");

  const SpinPath single = validate_path("");
  CHECK(single.qubits() == 1);
  CHECK(single.endpoint().twice == 1);

  try {
    (void)validate_path("00");
    FAIL("expected InvalidYamanouchi");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kInvalidYamanouchi);
    REQUIRE(e.position().has_value());
    CHECK(*e.position() == 2);
  }
  try {
    (void)validate_path("1000");
    FAIL("expected InvalidYamanouchi");
  } catch (const Error& e) {
    CHECK(*e.position() == 4);
  }
  CHECK(code_of([] { (void)validate_path("1a"); }) == Errc::kParse);
}

TEST_CASE("endpoint spin") {
  CHECK(endpoint_spin(validate_path("011")).twice == 2);
  CHECK(endpoint_spin(validate_path("01")).twice == 1);
  for (int n = 1; n <= 64; ++n) {
    CHECK(endpoint_spin(validate_path(std::string(static_cast<std::size_t>(n - 1), '1'))).twice == n);
  }
}

TEST_CASE("prefix, extension and ordering") {
  const SpinPath p = validate_path("1101");
  CHECK(p.prefix(3).to_string() == "11");
  CHECK(p.has_prefix(p.prefix(3)));
  CHECK_FALSE(p.has_prefix(validate_path("10")));
  CHECK(validate_path("1").extended(false).to_string() == "10");
  CHECK(code_of([] { (void)validate_path("0").extended(false); }) == Errc::kInvalidYamanouchi);
  CHECK(code_of([&] { (void)p.prefix(6); }) == Errc::kPrefixTooLong);
  CHECK(validate_path("01") < validate_path("10"));
  CHECK(validate_path("1") < validate_path("10"));
}

TEST_CASE("enumerate_paths") {
  auto strings = [](int n) {
    std::vector<std::string> out;
    for (const auto& p : enumerate_paths(n)) out.push_back(p.to_string());
    return out;
  };
  CHECK(strings(2) == std::vector<std::string>{"0", "1"});
  CHECK(strings(3) == std::vector<std::string>{"01", "10", "11"});
  int zero_at_four = 0;
  for (const auto& p : enumerate_paths(4)) zero_at_four += p.endpoint().twice == 0 ? 1 : 0;
  CHECK(zero_at_four == 2);
  CHECK(code_of([] { (void)enumerate_paths(21); }) == Errc::kTooLarge);

  for (int n = 1; n <= 12; ++n) {
    const auto paths = enumerate_paths(n);
    CHECK(std::is_sorted(paths.begin(), paths.end()));
    std::map<int, long> counts;
    for (const auto& p : paths) ++counts[p.endpoint().twice];
    CHECK(counts == testing::brute_path_counts(n));
    for (const auto& [twice_j, c] : counts) CHECK(dim_d(n, {twice_j}) == c);
  }
}

TEST_CASE("dim_d values and the dimension identity") {
  CHECK(dim_d(6, {0}) == 5);
  CHECK(dim_d(4, {4}) == 1);
  CHECK(dim_d(4, {0}) == 2);
  CHECK(code_of([] { (void)dim_d(5, {2}); }) == Errc::kParityMismatch);
  for (int n = 1; n <= 64; ++n) {
    BigInt total = 0;
    for (int tj = n % 2; tj <= n; tj += 2) total += (tj + 1) * dim_d(n, {tj});
    CHECK(total == (BigInt(1) << n));
  }
}

TEST_CASE("path and tableau bijection") {
  const StdTableau2 t = path_to_tableau(validate_path("01"));
  CHECK(t.top == std::vector<int>{1, 3});
  CHECK(t.bottom == std::vector<int>{2});
  const StdTableau2 row = path_to_tableau(validate_path("1111"));
  CHECK(row.top == std::vector<int>{1, 2, 3, 4, 5});
  CHECK(row.bottom.empty());
  CHECK(tableau_to_path(t).to_string() == "01");
  CHECK(code_of([] { (void)tableau_to_path(StdTableau2{{1, 4}, {2, 3}}); }) == Errc::kNotStandard);
  CHECK(code_of([] { (void)tableau_to_path(StdTableau2{{2, 3}, {1}}); }) == Errc::kNotStandard);

  for (int n = 1; n <= 10; ++n) {
    std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
    for (const auto& p : enumerate_paths(n)) {
      const StdTableau2 tab = path_to_tableau(p);
      CHECK(tab.is_standard());
      CHECK(tab.shape() == shape_for(n, p.endpoint()));
      CHECK(tableau_to_path(tab) == p);
      seen.insert({tab.top, tab.bottom});
    }
    CHECK(seen.size() == enumerate_paths(n).size());
  }
}

TEST_CASE("hook walk is uniform over tableaux") {
  Rng rng(11);
  const std::vector<YoungShape2> shapes = {{2, 1}, {3, 3}, {5, 3}, {6, 4}, {4, 0}};
  for (const auto& shape : shapes) {
    const int n = shape.boxes();
    std::map<SpinPath, int> index;
    for (const auto& p : enumerate_paths(n)) {
      if (p.endpoint() == shape.spin()) index.emplace(p, static_cast<int>(index.size()));
    }
    const int draws = 100000;
    std::vector<double> obs(index.size(), 0.0);
    for (int i = 0; i < draws; ++i) {
      const StdTableau2 t = gnw_sample_tableau(shape, rng);
      REQUIRE(t.is_standard());
      obs[static_cast<std::size_t>(index.at(tableau_to_path(t)))] += 1.0;
    }
    const std::vector<double> expected(index.size(), static_cast<double>(draws) / index.size());
    CHECK(testing::chi_square_pvalue(obs, expected) > 0.01);
  }
}

TEST_CASE("uniform (J, M) samplers hit every pair with probability 2^-n") {
  for (int which = 0; which < 2; ++which) {
    for (int n = 1; n <= 6; ++n) {
      Rng rng(derive_seed(99, static_cast<std::uint64_t>(10 * which + n)));
      std::map<SchurLabel, int> index;
      for (const auto& p : enumerate_paths(n)) {
        for (int m = -p.endpoint().twice; m <= p.endpoint().twice; m += 2) {
          index.emplace(make_label(p, m), static_cast<int>(index.size()));
        }
      }
      REQUIRE(index.size() == (std::size_t{1} << n));
      const int draws = 100000;
      std::vector<double> obs(index.size(), 0.0);
      for (int i = 0; i < draws; ++i) {
        const SchurLabel l = which == 0 ? sample_uniform_jm_rejection(n, rng) : sample_uniform_jm_gnw(n, rng);
        obs[static_cast<std::size_t>(index.at(l))] += 1.0;
      }
      const std::vector<double> expected(index.size(), static_cast<double>(draws) / index.size());
      CHECK_MESSAGE(testing::chi_square_pvalue(obs, expected) > 0.01, "sampler " << which << " n " << n);
      if (n == 3) {
        CHECK(obs[static_cast<std::size_t>(index.at(make_label(validate_path("11"), 3)))] / draws ==
              doctest::Approx(0.125).epsilon(0.05));
      }
    }
  }
}

TEST_CASE("GNW sampler spin law at n = 4") {
  Rng rng(5);
  int zero = 0;
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) zero += sample_uniform_jm_gnw(4, rng).path.endpoint().twice == 0 ? 1 : 0;
  CHECK(static_cast<double>(zero) / draws == doctest::Approx(0.125).epsilon(0.03));
}

TEST_CASE("make_label validates M") {
  const SpinPath p = validate_path("1");
  CHECK(make_label(p, 2).twice_m() == 2);
  CHECK(code_of([&] { (void)make_label(p, 4); }) == Errc::kOutOfRange);
  CHECK(code_of([&] { (void)make_label(p, 1); }) == Errc::kParityMismatch);
}
