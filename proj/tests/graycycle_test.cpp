#include "doctest.h"
#include "oracles.hpp"
#include "ucg/cycle_file.hpp"
#include "ucg/graycycle.hpp"
#include "ucg/verifier.hpp"

using namespace ucg;

TEST_SUITE("graycycle") {

TEST_CASE("reflected Gray code matches i xor (i >> 1)") {
  for (std::size_t r = 1; r <= 10; ++r) {
    const auto g = rgc(r);
    const auto expect = oracle::gray(r);
    REQUIRE(g.size() == expect.size());
    CHECK(g.flips.front() == 0);
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(std::vector<int>(g.codewords[i].begin(), g.codewords[i].end()) ==
            expect[i]);
      if (i == 0) continue;
      std::size_t changed = 0, where = 0;
      for (std::size_t b = 0; b < r; ++b) {
        if (expect[i][b] != expect[i - 1][b]) {
          ++changed;
          where = b + 1;
        }
      }
      CHECK(changed == 1);
      CHECK(g.flips[i] == where);
    }
  }
  CHECK_THROWS_AS(rgc(0), DomainError);
  CHECK_THROWS_AS(rgc(kMaxGrayBits + 1), DomainError);
}

TEST_CASE("hatted codewords replace the flip bit by 2") {
  const auto g = rgc(3);
  CHECK(hatted_codeword(g, 0).to_string() == "0 0 0");
  CHECK(hatted_codeword(g, 1).to_string() == "0 0 2");
  CHECK(hatted_codeword(g, 3).to_string() == "0 1 2");
  CHECK_THROWS_AS(hatted_codeword(g, 4), DomainError);
}

TEST_CASE("construction reproduces the golden arrays") {
  CHECK(serialize_cycle_file(construct_cycle(2)) ==
        oracle::read_data("r2_k6.cycle"));
  CHECK(serialize_cycle_file(construct_cycle(3)) ==
        oracle::read_data("r3_k10.cycle"));
  CHECK(serialize_cycle_file(construct_cycle(4)) ==
        oracle::read_data("r4_k18.cycle"));
}

TEST_CASE("constructed cycles are induced under concrete primes") {
  for (std::size_t r = 2; r <= 8; ++r) {
    const auto c = construct_cycle(r);
    CHECK(c.k() == (std::size_t{1} << r) + 2);
    CHECK(alphabet(c).overall == std::vector<Residue>{0, 1, 2});
    const auto primes = oracle::primes_above(2, r);
    std::uint64_t n = 1;
    for (auto p : primes) n *= p;
    CHECK(oracle::integer_induced_cycle(oracle::realize(c, primes), n));
  }
  CHECK_THROWS_AS(construct_cycle(1), DomainError);
}

TEST_CASE("small cycles for prime powers") {
  CHECK(construct_small(5, 1).vertices == std::vector<std::uint64_t>{0, 1, 2});
  CHECK(construct_small(3, 2).vertices == std::vector<std::uint64_t>{0, 1, 3, 4});
  CHECK(construct_small(2, 3).vertices == std::vector<std::uint64_t>{0, 1, 2, 3});
  CHECK_THROWS_AS(construct_small(2, 1), DomainError);
  CHECK_THROWS_AS(construct_small(6, 1), DomainError);
  for (auto [p, a] : {std::pair{3ULL, 1U}, {7, 1}, {2, 2}, {3, 3}, {5, 2}}) {
    const auto s = construct_small(p, a);
    std::uint64_t n = 1;
    for (unsigned e = 0; e < a; ++e) n *= p;
    CHECK(oracle::integer_induced_cycle(s.vertices, n));
  }
}

TEST_CASE("closed forms") {
  CHECK(closed_form_length(factorize(2)).tag == LengthCase::kNoCycle);
  CHECK(closed_form_length(factorize(2)).value == 0);
  CHECK(closed_form_length(factorize(7)).value == 3);
  CHECK(closed_form_length(factorize(8)).value == 4);
  CHECK(closed_form_length(factorize(9)).tag == LengthCase::kPrimePower);
  CHECK(closed_form_length(factorize(12)).value == 6);
  CHECK(closed_form_length(factorize(30)).value == 10);
  CHECK(closed_form_length(factorize(210)).value == 18);
  CHECK(to_string(LengthCase::kMultiPrime) == "multi-prime");
}

TEST_CASE("lift keeps cycles induced") {
  for (std::size_t r = 2; r <= 6; ++r) {
    const auto c = construct_cycle(r);
    const auto up = lift_cycle(c);
    CHECK(up.k() == c.k());
    CHECK(up.r() == c.r() + 1);
    CHECK(verify_induced_cycle(up).ok);
  }
  // Odd length: the last row of the new column gets label 2.
  const CycleArray tri({ResidueString({0}), ResidueString({1}), ResidueString({2})});
  const auto up = lift_cycle(tri);
  CHECK(up.row(2).to_string() == "2 2");
  CHECK(verify_induced_cycle(up).ok);
  const CycleArray bad({ResidueString({0}), ResidueString({0}), ResidueString({1})});
  CHECK_THROWS_AS(lift_cycle(bad), DomainError);
}

}  // TEST_SUITE
