#include <map>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "ucg/core_model.hpp"
#include "ucg/cycle_file.hpp"

using namespace ucg;

namespace {

CycleArray fixture(const std::string& name) {
  return parse_cycle_file(oracle::read_data(name));
}

// Applies an independent random permutation to the labels of every column.
CycleArray relabel(const CycleArray& c, std::mt19937_64& rng) {
  const auto alpha = alphabet(c);
  std::vector<std::map<Residue, Residue>> maps(c.r());
  for (std::size_t j = 0; j < c.r(); ++j) {
    std::vector<Residue> image(alpha.per_column[j].size() + 3);
    std::iota(image.begin(), image.end(), Residue{0});
    std::shuffle(image.begin(), image.end(), rng);
    for (std::size_t t = 0; t < alpha.per_column[j].size(); ++t) {
      maps[j][alpha.per_column[j][t]] = image[t];
    }
  }
  std::vector<ResidueString> rows;
  for (const auto& row : c.rows()) {
    std::vector<Residue> terms;
    for (std::size_t j = 0; j < c.r(); ++j) terms.push_back(maps[j][row[j]]);
    rows.emplace_back(std::move(terms));
  }
  return CycleArray(std::move(rows));
}

}  // namespace

TEST_SUITE("core_model") {

TEST_CASE("factorize and radical") {
  CHECK(factorize(360).to_string() == "2^3 * 3^2 * 5");
  CHECK(factorize(97).r() == 1);
  CHECK(radical(factorize(360)).n() == 30);
  CHECK(factorize(12).square_free() == false);
  CHECK(factorize(30).square_free());
  CHECK_THROWS_AS(factorize(1), DomainError);
  CHECK_THROWS_AS(factorize(0), DomainError);
  const std::uint64_t big = 4294967291ULL * 3;  // largest 32-bit prime times 3
  CHECK(factorize(big).prime(1) == 4294967291ULL);
}

TEST_CASE("from_factors validates its input") {
  CHECK_THROWS_AS(Modulus::from_factors({{4, 1}}), DomainError);
  CHECK_THROWS_AS(Modulus::from_factors({{3, 0}}), DomainError);
  CHECK_THROWS_AS(Modulus::from_factors({{3, 1}, {2, 1}}), DomainError);
  CHECK(Modulus::from_factors({{2, 1}, {3, 2}}).n() == 18);
}

TEST_CASE("residue representation and CRT") {
  const auto m = factorize(30);
  CHECK(residue_rep(7, m).to_string() == "1 1 2");
  CHECK(residue_rep(-1, m).to_string() == "1 2 4");
  for (std::int64_t x = 0; x < 30; ++x) {
    CHECK(crt_min_rep(residue_rep(x, m), m) == std::uint64_t(x));
  }
  // Non-square-free moduli reduce modulo the radical.
  const auto m12 = factorize(12);
  CHECK(crt_min_rep(residue_rep(11, m12), m12) == 5);
}

TEST_CASE("similarity counts agree with gcd adjacency") {
  for (std::uint64_t n : {6, 12, 30, 35, 60}) {
    const auto m = factorize(n);
    for (std::uint64_t x = 0; x < n; ++x) {
      for (std::uint64_t y = 0; y < n; ++y) {
        const bool unit = std::gcd(x > y ? x - y : y - x, n) == 1;
        CHECK(adjacent(residue_rep(x, m), residue_rep(y, m)) == (unit && x != y));
      }
    }
  }
  CHECK_THROWS_AS(similarity_count(ResidueString({0, 1}), ResidueString({0})),
                  DomainError);
}

TEST_CASE("cycle arrays reject malformed shapes") {
  CHECK_THROWS_AS(CycleArray({ResidueString({0}), ResidueString({1})}), DomainError);
  CHECK_THROWS_AS(CycleArray({ResidueString({0}), ResidueString({1}),
                              ResidueString({2, 0})}),
                  DomainError);
}

TEST_CASE("partition signatures") {
  CHECK_THROWS_AS(PartitionSignature({2, 1}), DomainError);
  const PartitionSignature s({2, PartitionSignature::kInfinite});
  CHECK(s.infinite(1));
  CHECK(s.to_string() == "{2,inf}");
}

TEST_CASE("canonical form is idempotent and relabel invariant") {
  std::mt19937_64 rng(7);
  for (const char* name : {"r2_k6.cycle", "r3_k6.cycle",
                           "r3_k10.cycle", "r4_k18.cycle"}) {
    const auto c = fixture(name);
    const auto canon = canonical_form(c);
    CHECK(canonical_form(canon) == canon);
    CHECK(canon.row(0) == ResidueString(std::vector<Residue>(c.r(), 0)));
    CHECK(canon.row(1) == ResidueString(std::vector<Residue>(c.r(), 1)));
    for (int trial = 0; trial < 50; ++trial) {
      const auto moved = relabel(c, rng);
      CHECK(canonical_form(moved) == canon);
      CHECK(similarity_matrix(moved) == similarity_matrix(c));
    }
  }
}

TEST_CASE("canonical form needs an adjacent first edge") {
  const CycleArray c({ResidueString({0, 0}), ResidueString({0, 1}),
                      ResidueString({1, 2})});
  CHECK_THROWS_WITH(canonical_form(c), "first edge not adjacent");
}

TEST_CASE("alphabet collects residues per column") {
  const auto a = alphabet(fixture("r2_k6.cycle"));
  CHECK(a.count(0) == 2);
  CHECK(a.count(1) == 3);
  CHECK(a.overall == std::vector<Residue>{0, 1, 2});
}

}  // TEST_SUITE
