#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "ucg/graycycle.hpp"
#include "ucg/search.hpp"
#include "ucg/verifier.hpp"

using namespace ucg;

namespace {

SearchConfig config_for(std::uint64_t n) {
  const auto m = factorize(n);
  std::vector<std::uint64_t> caps;
  for (const auto& f : m.factors()) caps.push_back(f.prime);
  auto cfg = SearchConfig::per_column(caps);
  cfg.allow_repeated_rows = !m.square_free();
  cfg.theory_cap = false;
  return cfg;
}

// Adjacency of rows over the given caps, built from integers in [0, n) with
// gcd adjacency; only vertices whose residues lie in the caps are kept.
std::vector<std::vector<bool>> residue_graph(const std::vector<std::uint64_t>& caps) {
  std::vector<std::vector<std::uint64_t>> rows{{}};
  for (auto k : caps) {
    std::vector<std::vector<std::uint64_t>> next;
    for (const auto& row : rows) {
      for (std::uint64_t t = 0; t < k; ++t) {
        auto extended = row;
        extended.push_back(t);
        next.push_back(extended);
      }
    }
    rows = next;
  }
  std::vector<std::vector<bool>> adj(rows.size(), std::vector<bool>(rows.size()));
  for (std::size_t u = 0; u < rows.size(); ++u) {
    for (std::size_t v = 0; v < rows.size(); ++v) {
      bool differs = true;
      for (std::size_t j = 0; j < caps.size(); ++j) differs = differs && rows[u][j] != rows[v][j];
      adj[u][v] = differs;
    }
  }
  return adj;
}

}  // namespace

TEST_SUITE("search") {

TEST_CASE("search agrees with the integer brute force") {
  for (std::uint64_t n : {4, 5, 6, 8, 9, 10, 12, 15, 30}) {
    CAPTURE(n);
    const auto oracle_result = brute_force_oracle(n);
    const auto searched = search_longest(config_for(n));
    CHECK(searched.exhaustive);
    CHECK(searched.best_length == oracle_result.best_length);
    CHECK(searched.best_length == closed_form_length(factorize(n)).value);
    REQUIRE(searched.witness.has_value());
    CHECK(verify_induced_cycle(*searched.witness).ok);
  }
}

TEST_CASE("search agrees with the naive search on small row spaces") {
  for (const auto& caps : std::vector<std::vector<std::uint64_t>>{
           {2, 3}, {3, 3}, {2, 2}, {2, 2, 2}, {2, 2, 3}, {2, 3, 3}, {4, 2},
           {2, 2, 3, 3}, {4, 3, 2}}) {
    CAPTURE(caps.size());
    auto cfg = SearchConfig::per_column(caps);
    cfg.theory_cap = false;
    const auto got = search_longest(cfg);
    const auto naive = longest_induced_cycle_naive(residue_graph(caps));
    CHECK(got.exhaustive);
    CHECK(got.best_length == naive.best_length);
  }
}

TEST_CASE("longest cycles for two and three columns") {
  auto cfg = SearchConfig::per_column({2, 3});
  const auto r2 = search_longest(cfg);
  CHECK(r2.best_length == 6);
  CHECK(r2.exhaustive);

  cfg = SearchConfig::per_column({2, 3, 3});
  const auto r3 = search_longest(cfg);
  CHECK(r3.best_length == 10);
  CHECK(r3.exhaustive);
  CHECK(verify_induced_cycle(*r3.witness).ok);

  // Without the theoretical stop the search still proves 10 is the maximum.
  cfg.theory_cap = false;
  const auto r3_full = search_longest(cfg);
  CHECK(r3_full.best_length == 10);
  CHECK(r3_full.exhaustive);
  CHECK_FALSE(r3_full.stopped_at_bound);
}

TEST_CASE("witnesses are canonical") {
  for (std::size_t r = 2; r <= 3; ++r) {
    const auto result = search_longest(SearchConfig::global_cap(r, 3));
    REQUIRE(result.witness);
    CHECK(canonical_form(*result.witness) == *result.witness);
  }
}

TEST_CASE("parallel search is deterministic and matches sequential") {
  auto cfg = SearchConfig::per_column({3, 3, 3});
  cfg.theory_cap = false;
  const auto one = search_longest(cfg);
  cfg.workers = 4;
  const auto four_a = search_longest(cfg);
  const auto four_b = search_longest(cfg);
  CHECK(one.best_length == four_a.best_length);
  CHECK(four_a.witness == four_b.witness);
  CHECK(one.witness == four_a.witness);
}

TEST_CASE("seeded incumbent at the bound returns at once") {
  auto cfg = SearchConfig::global_cap(4, 3);
  cfg.incumbent = construct_cycle(4);
  const auto result = search_longest(cfg);
  CHECK(result.best_length == 18);
  CHECK(result.exhaustive);
  CHECK(result.stopped_at_bound);
  CHECK(verify_induced_cycle(*result.witness).ok);
}

TEST_CASE("no cycle over three labels and four columns beats 18") {
  auto cfg = SearchConfig::global_cap(4, 3);
  cfg.theory_cap = false;
  cfg.workers = 2;
  const auto result = search_longest(cfg);
  CHECK(result.exhaustive);
  CHECK(result.best_length == 18);
  CHECK_FALSE(result.stopped_at_bound);
}

TEST_CASE("budget exhaustion is reported as non-exhaustive") {
  auto cfg = SearchConfig::global_cap(5, 3);
  cfg.theory_cap = false;
  cfg.budget = std::chrono::milliseconds(50);
  const auto result = search_longest(cfg);
  CHECK_FALSE(result.exhaustive);
  CHECK(result.best_length <= 34);
  if (result.witness) CHECK(verify_induced_cycle(*result.witness).ok);
}

TEST_CASE("decide mode") {
  auto cfg = SearchConfig::global_cap(3, 3);
  cfg.mode = SearchMode::kDecide;
  cfg.theory_cap = false;
  cfg.target = 10;
  CHECK(search_longest(cfg).best_length == 10);
  cfg.target = 11;
  const auto none = search_longest(cfg);
  CHECK(none.best_length == 0);
  CHECK(none.exhaustive);
}

TEST_CASE("enumeration lists distinct canonical cycles") {
  auto cfg = SearchConfig::per_column({2, 3});
  cfg.mode = SearchMode::kEnumerate;
  cfg.target = 6;
  std::set<CycleArray> seen;
  const auto summary = enumerate_canonical_cycles(cfg, [&](const CycleArray& c) {
    CHECK(c.k() == 6);
    CHECK(verify_induced_cycle(c).ok);
    CHECK(canonical_form(c) == c);
    seen.insert(c);
    return true;
  });
  CHECK(summary.count == seen.size());
  CHECK(summary.count > 0);
  CHECK_FALSE(summary.truncated);
  CHECK(seen.count(construct_cycle(2)) == 1);

  std::uint64_t taken = 0;
  const auto stopped = enumerate_canonical_cycles(cfg, [&](const CycleArray&) {
    return ++taken < 1;
  });
  CHECK(stopped.truncated);
  CHECK(taken == 1);
}

TEST_CASE("configuration errors") {
  CHECK_THROWS_AS(search_longest(SearchConfig::per_column({2, 1})), DomainError);
  CHECK_THROWS_AS(search_longest(SearchConfig::global_cap(9, 3)), DomainError);
  auto cfg = SearchConfig::global_cap(2, 3);
  cfg.mode = SearchMode::kDecide;
  CHECK_THROWS_AS(search_longest(cfg), DomainError);
  CHECK_THROWS_AS(brute_force_oracle(2), DomainError);
}

}  // TEST_SUITE
