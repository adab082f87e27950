#include <doctest.h>

#include <cmath>
#include <random>

#include "actsearch/dgfi.hpp"
#include "actsearch/errors.hpp"
#include "test_support.hpp"

using namespace actsearch;
using actsearch::testing::divs;
using actsearch::testing::random_divergences;
using actsearch::testing::state_with;

namespace {

constexpr double kThreshold = 6.907755278982137;  // -ln(1e-3)

SearchState random_state(std::mt19937_64& gen, std::size_t num_cells) {
  std::normal_distribution<double> n(0.0, 5.0);
  std::vector<double> sums(num_cells);
  for (double& s : sums) s = n(gen);
  return state_with(std::move(sums));
}

bool is_rank_window(const CellSet& probes, const SearchState& s, std::size_t first, std::size_t count) {
  if (probes.size() != count) return false;
  for (std::size_t i = 0; i < count; ++i)
    if (probes[i] != s.at_rank(first + i)) return false;
  return true;
}

}  // namespace

TEST_SUITE("dgfi-policy") {
  TEST_CASE("single probe, single target") {
    const SearchState s = state_with({2, 5, 1});
    // F_bar for cell 1 = 1 / (1/2 + 1/2) = 1.0
    CHECK(DgfiPolicy(divs({1.0, 1.2, 1.0}, {2.0, 1.0, 2.0}), 1, 1, kThreshold).select_single(s) == CellSet{1});
    CHECK(DgfiPolicy(divs({1.0, 0.5, 1.0}, {2.0, 1.0, 2.0}), 1, 1, kThreshold).select_single(s) == CellSet{0});

    // At n = 0 the leader is cell 0 by tie-break; its own rule decides.
    const SearchState fresh(3);
    CHECK(DgfiPolicy(divs({1.2, 1.0, 1.0}, {1.0, 2.0, 2.0}), 1, 1, kThreshold).select_single(fresh) == CellSet{0});
    CHECK(DgfiPolicy(divs({0.5, 1.0, 1.0}, {1.0, 2.0, 2.0}), 1, 1, kThreshold).select_single(fresh) == CellSet{1});
  }

  TEST_CASE("multiple probes, single target") {
    const SearchState s = state_with({4, 3, 2, 1});
    // Others d_fg = {1, 2, 4}: F(1) = 0.5714, F(2) = 1.0
    CHECK(DgfiPolicy(divs({0.3, 1, 1, 1}, {1, 1, 2, 4}), 2, 1, kThreshold).select_multi(s) == CellSet{1, 2});
    CHECK(DgfiPolicy(divs({0.6, 1, 1, 1}, {1, 1, 2, 4}), 2, 1, kThreshold).select_multi(s) == CellSet{0, 1});
    CHECK(DgfiPolicy(divs({0.3, 1, 1, 1}, {1, 1, 2, 4}), 3, 1, kThreshold).select_multi(s) == CellSet{0, 1, 2});
  }

  TEST_CASE("multiple targets") {
    const SearchState s = state_with({4, 3, 2, 1});
    const Divergences d = divs({3, 6, 1, 1}, {1, 1, 1, 4});
    // G_bar = 2.0 >= F_bar = 0.8: probe rank L.
    CHECK(DgfiPolicy(d, 1, 2, kThreshold).select_multitarget(s) == CellSet{1});
    // K = 2: k = 0 -> 1.0, k = 1 -> 2.8, k = 2 -> 3.0.
    const DgfiPolicy two(d, 2, 2, kThreshold);
    CHECK(two.target_probes_for(two.hypotheses().index_of(CellSet{0, 1})) == 2);
    CHECK(two.select_multitarget(s) == CellSet{0, 1});
    // When F_bar dominates, the (L+1)-th cell is probed.
    CHECK(DgfiPolicy(divs({0.1, 0.2, 1, 1}, {1, 1, 5, 4}), 1, 2, kThreshold).select_multitarget(s) == CellSet{2});
  }

  TEST_CASE("k* stays inside the rank window") {
    // M = 4, L = 3, K = 2: only one non-target, so at least one target is probed.
    const DgfiPolicy p(divs({0.01, 0.01, 0.01, 1}, {1, 1, 1, 50}), 2, 3, kThreshold);
    const SearchState s = state_with({4, 3, 2, 1});
    const CellSet probes = p.select(s);
    CHECK(probes == CellSet{2, 3});
  }

  TEST_CASE("should_stop uses the natural-log threshold with >=") {
    const DgfiPolicy p(divs({1, 1, 1}, {1, 1, 1}), 1, 1, -std::log(1e-3));
    CHECK_FALSE(p.should_stop(state_with({6.90, 0, -1})));
    CHECK(p.should_stop(state_with({6.91, 0, -1})));
    CHECK(p.should_stop(state_with({-std::log(1e-3), 0, -1})));
    CHECK_FALSE(p.should_stop(SearchState(3)));
  }

  TEST_CASE("decide") {
    const Divergences d = divs({1, 1, 1}, {1, 1, 1});
    CHECK(DgfiPolicy(d, 1, 1, kThreshold).decide(state_with({2, 5, 1})) == CellSet{1});
    CHECK(DgfiPolicy(d, 1, 2, kThreshold).decide(state_with({2, 5, 1})) == CellSet{0, 1});
    CHECK(DgfiPolicy(d, 1, 1, kThreshold).decide(state_with({5, 5, 1})) == CellSet{0});
  }

  TEST_CASE("next_action") {
    const DgfiPolicy p(divs({1, 1, 1}, {1, 1, 1}), 1, 1, kThreshold);
    const PolicyAction go = p.next_action(state_with({1, 0, 0}));
    CHECK(go.kind == PolicyAction::Kind::Continue);
    CHECK(go.cells.size() == 1);
    const PolicyAction stop = p.next_action(state_with({0, 9, 0}));
    CHECK(stop.kind == PolicyAction::Kind::Stop);
    CHECK(stop.cells == CellSet{1});
  }

  TEST_CASE("invalid dimensions") {
    CHECK_THROWS_AS(DgfiPolicy(divs({1, 1}, {1, 1}), 2, 1, kThreshold), ConfigError);
    CHECK_THROWS_AS(DgfiPolicy(divs({1, 1, 1}, {1, 1, 1}), 1, 3, kThreshold), ConfigError);
    CHECK_THROWS_AS(DgfiPolicy(divs({1, 0, 1}, {1, 1, 1}), 1, 1, kThreshold), DegenerateInstanceError);
  }

  TEST_CASE("the general rules reduce to the simpler ones") {
    std::mt19937_64 gen(123);
    for (int i = 0; i < 1000; ++i) {
      const std::size_t m = 2 + gen() % 8;
      const Divergences d = random_divergences(gen, m);
      const SearchState s = random_state(gen, m);
      const DgfiPolicy single(d, 1, 1, kThreshold);
      // K = 1 through the multi-probe rule and through the multi-target rule.
      REQUIRE(single.select_multi(s) == single.select_single(s));
      REQUIRE(single.select_multitarget(s) == single.select_single(s));
      const std::size_t k = 1 + gen() % (m - 1);
      const DgfiPolicy multi(d, k, 1, kThreshold);
      REQUIRE(multi.select_multitarget(s) == multi.select_multi(s));
    }
  }

  TEST_CASE("probe sets are consecutive rank windows and deterministic") {
    std::mt19937_64 gen(321);
    for (int i = 0; i < 1000; ++i) {
      const std::size_t m = 3 + gen() % 8;
      const std::size_t k = 1 + gen() % (m - 1);
      const std::size_t l = 1 + gen() % (m - 1);
      const Divergences d = random_divergences(gen, m);
      const SearchState s = random_state(gen, m);
      const DgfiPolicy p(d, k, l, kThreshold);
      const CellSet probes = p.select(s);
      bool window = false;
      for (std::size_t first = 0; first + k <= m; ++first) window = window || is_rank_window(probes, s, first, k);
      REQUIRE(window);
      if (l == 1) REQUIRE((is_rank_window(probes, s, 0, k) || is_rank_window(probes, s, 1, k)));
      REQUIRE(p.select(s) == probes);
      REQUIRE(DgfiPolicy(d, k, l, kThreshold).select(s) == probes);
    }
  }
}
