#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "ucg/cycle_file.hpp"
#include "ucg/graycycle.hpp"
#include "ucg/verifier.hpp"

using namespace ucg;

TEST_SUITE("verifier") {

TEST_CASE("reports every kind of violation") {
  const auto ok = parse_cycle_file(oracle::read_data("r2_k6.cycle"));
  CHECK(verify_induced_cycle(ok).ok);

  const auto chord = parse_cycle_file(oracle::read_data("chord.cycle"));
  const auto report = verify_induced_cycle(chord);
  CHECK_FALSE(report.ok);
  CHECK(report.has(ViolationKind::kConsecutiveSimilar));
  CHECK(report.has(ViolationKind::kNonconsecutiveDisjoint));
  CHECK(report.has(ViolationKind::kDuplicateRows));

  // Changing the fourth row to 0 0 duplicates row 0 and meets row 2.
  auto rows = ok.rows();
  rows[3] = ResidueString({0, 0});
  const auto broken = verify_induced_cycle(CycleArray(rows));
  CHECK(broken.has(ViolationKind::kDuplicateRows));
  CHECK(broken.has(ViolationKind::kConsecutiveSimilar));

  // Repeated rows are allowed in 4-cycles.
  const CycleArray k22({ResidueString({0}), ResidueString({1}),
                        ResidueString({0}), ResidueString({1})});
  CHECK(verify_induced_cycle(k22).ok);

  // Residues must fit the governing modulus.
  const auto ranged = ok.with_governor(factorize(10));
  CHECK(verify_induced_cycle(ranged).ok);
  CHECK(verify_induced_cycle(ok.with_governor(factorize(4))).has(ViolationKind::kRange));
  CHECK(verify_induced_cycle(ok.with_governor(factorize(30))).has(ViolationKind::kRange));
}

TEST_CASE("integer cycles agree with the gcd oracle") {
  std::mt19937_64 rng(11);
  for (std::uint64_t n : {12, 30, 35}) {
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t k = 3 + rng() % 6;
      std::vector<std::uint64_t> v;
      while (v.size() < k) {
        const auto x = rng() % n;
        if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
      }
      std::vector<std::int64_t> signed_v(v.begin(), v.end());
      CHECK(verify_integer_cycle(signed_v, n).ok ==
            oracle::integer_induced_cycle(v, n));
    }
  }
  CHECK(verify_integer_cycle({0, 1, 2}, 5).ok);
  CHECK(verify_integer_cycle({0, 1, 3, 4}, 9).ok);
  CHECK_FALSE(verify_integer_cycle({0, 1, 2, 3}, 6).ok);
  CHECK(verify_integer_cycle({0, 1, 5 + 0, 1 + 10}, 5).has(
      ViolationKind::kDuplicateRows));
}

TEST_CASE("set pairs from constructed cycles satisfy all three conditions") {
  for (std::size_t r = 2; r <= 6; ++r) {
    const auto s = build_set_pairs(construct_cycle(r));
    CHECK(s.h() == (std::size_t{1} << r));
    CHECK_FALSE(check_set_pairs(s).has_value());
  }
  CHECK_THROWS_AS(build_set_pairs(CycleArray({ResidueString({0}), ResidueString({1}),
                                             ResidueString({2})})),
                  DomainError);
}

TEST_CASE("tampered set pairs are caught") {
  auto s = build_set_pairs(construct_cycle(3));
  s.pairs[2].b = s.pairs[2].a;  // A_2 now meets B_2
  const auto v = check_set_pairs(s);
  REQUIRE(v.has_value());
  CHECK(v->condition == 2);
}

TEST_CASE("equal adjacent rows break the disjointness condition") {
  const CycleArray c({ResidueString({0, 0}), ResidueString({0, 0}),
                      ResidueString({1, 1}), ResidueString({2, 2})});
  try {
    build_set_pairs(c);
    FAIL("expected a set-pair error");
  } catch (const SetPairError& e) {
    CHECK(e.violation().condition == 2);
  }
}

TEST_CASE("later pairs always meet earlier ones") {
  for (const char* name : {"r2_k6.cycle", "r3_k10.cycle", "r4_k18.cycle"}) {
    const auto c = parse_cycle_file(oracle::read_data(name));
    const auto s = build_set_pairs(c);
    CHECK(s.h() == c.k() - 2);
    for (std::size_t i = 0; i < s.h(); ++i) {
      for (std::size_t j = i + 1; j < s.h(); ++j) {
        // A_i is row i, B_j is row j+1: non-consecutive unless j + 1 == i + 1.
        CHECK(similarity_count(c.row(i), c.row(j + 1)) >= 1);
      }
    }
  }
}

TEST_CASE("certificates hold for several seeds and are reproducible") {
  const auto s = build_set_pairs(construct_cycle(4));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto cert = rank_certificate(s, seed);
    CHECK(cert.certified);
    CHECK(cert.pairing_triangular);
    CHECK(cert.tensor_rank == 16);
    CHECK(rank_certificate(s, seed).to_text() == cert.to_text());
  }
  CHECK(rank_certificate(s, 0).to_text() != rank_certificate(s, 1).to_text());
}

TEST_CASE("collinear sampling makes certification unavailable") {
  const auto s = build_set_pairs(construct_cycle(2));
  const VectorSampler collinear = [] { return std::array<std::int64_t, 2>{3, 3}; };
  CHECK_THROWS_AS(rank_certificate(s, 0, collinear), CertificationUnavailable);
}

TEST_CASE("exact rank methods agree with rational elimination") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = 1 + rng() % 7, cols = 1 + rng() % 7;
    std::vector<std::vector<BigInt>> m(rows, std::vector<BigInt>(cols));
    for (auto& row : m) {
      for (auto& x : row) x = BigInt(static_cast<std::int64_t>(rng() % 7) - 3);
    }
    // Force some dependencies.
    if (rows > 2) {
      for (std::size_t j = 0; j < cols; ++j) m[2][j] = m[0][j] * 5 - m[1][j] * 2;
    }
    const auto expect = oracle::rational_rank(m);
    CHECK(exact_rank(m) == expect);
    CHECK(rank_mod_p(m, 2305843009213693951ULL) == expect);
  }
}

TEST_CASE("bound formulas") {
  CHECK(theoretical_bounds(1).upper == 4);
  CHECK(theoretical_bounds(2).upper == 6);
  CHECK(theoretical_bounds(10).upper == 1026);
  CHECK(*theoretical_bounds(3, 3).residue_bound == 21);
  CHECK(residue_bound({2, 3}) == 2 * 3 - 1 * 2 + 2);
  CHECK_THROWS_AS(theoretical_bounds(0), DomainError);
}

}  // TEST_SUITE
