#pragma once

// Reference implementations used by the tests. They share no code with the
// library beyond the plain data types, so agreement is evidence rather than
// tautology.

#include <cstdint>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ucg/core_model.hpp"

namespace oracle {

inline std::string read_data(const std::string& name) {
  std::ifstream in(std::string(UCG_TEST_DATA) + "/" + name, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Reflected Gray code: codeword i is i xor (i >> 1), most significant bit
// first.
inline std::vector<std::vector<int>> gray(std::size_t r) {
  std::vector<std::vector<int>> out;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << r); ++i) {
    const std::uint64_t g = i ^ (i >> 1);
    std::vector<int> bits(r);
    for (std::size_t b = 0; b < r; ++b) bits[b] = (g >> (r - 1 - b)) & 1;
    out.push_back(bits);
  }
  return out;
}

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

// The first r primes strictly greater than `above`.
inline std::vector<std::uint64_t> primes_above(std::uint64_t above,
                                               std::size_t r) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = above + 1; out.size() < r; ++p) {
    if (is_prime(p)) out.push_back(p);
  }
  return out;
}

// Integers realizing the rows of c under the given primes (one per column),
// found by brute-force CRT search over [0, prod).
inline std::vector<std::uint64_t> realize(const ucg::CycleArray& c,
                                          const std::vector<std::uint64_t>& primes) {
  std::uint64_t n = 1;
  for (auto p : primes) n *= p;
  std::vector<std::uint64_t> out;
  for (const auto& row : c.rows()) {
    // Solve incrementally: x = x0 + m * t.
    std::uint64_t x = 0, m = 1;
    for (std::size_t j = 0; j < primes.size(); ++j) {
      while (x % primes[j] != row[j]) x += m;
      m *= primes[j];
    }
    out.push_back(x % n);
  }
  return out;
}

// Induced-cycle test on integers modulo n with gcd adjacency.
inline bool integer_induced_cycle(const std::vector<std::uint64_t>& v,
                                  std::uint64_t n) {
  const std::size_t k = v.size();
  auto unit_diff = [n](std::uint64_t a, std::uint64_t b) {
    const std::uint64_t d = a > b ? a - b : b - a;
    return std::gcd(d % n, n) == 1;
  };
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const bool consecutive = j == i + 1 || (i == 0 && j == k - 1);
      if (unit_diff(v[i], v[j]) != consecutive) return false;
      if (v[i] == v[j]) return false;
    }
  }
  return true;
}

// Rank over Q by Gaussian elimination with exact rationals.
inline std::size_t rational_rank(
    const std::vector<std::vector<boost::multiprecision::cpp_int>>& m) {
  using Q = boost::multiprecision::cpp_rational;
  std::vector<std::vector<Q>> a;
  for (const auto& row : m) a.emplace_back(row.begin(), row.end());
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      const Q f = a[i][c] / a[rank][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

// Z[i] / (alpha) by brute force: representatives, membership and units.
struct GaussianQuotient {
  std::int64_t a, b;  // alpha = a + bi
  std::int64_t norm;
  std::vector<std::pair<std::int64_t, std::int64_t>> reps;

  GaussianQuotient(std::int64_t a_, std::int64_t b_)
      : a(a_), b(b_), norm(a_ * a_ + b_ * b_) {
    for (std::int64_t c = 0; c < norm && std::int64_t(reps.size()) < norm; ++c) {
      for (std::int64_t d = 0; d < norm && std::int64_t(reps.size()) < norm; ++d) {
        bool fresh = true;
        for (const auto& [x, y] : reps) {
          if (divisible(c - x, d - y)) {
            fresh = false;
            break;
          }
        }
        if (fresh) reps.emplace_back(c, d);
      }
    }
  }

  // alpha | (x + yi)  <=>  (x + yi) * conj(alpha) has both parts divisible by N.
  bool divisible(std::int64_t x, std::int64_t y) const {
    const std::int64_t re = x * a + y * b;
    const std::int64_t im = y * a - x * b;
    return re % norm == 0 && im % norm == 0;
  }

  bool unit(std::int64_t x, std::int64_t y) const {
    for (const auto& [c, d] : reps) {
      // (x + yi)(c + di) - 1
      if (divisible(x * c - y * d - 1, x * d + y * c)) return true;
    }
    return false;
  }
};

}  // namespace oracle
