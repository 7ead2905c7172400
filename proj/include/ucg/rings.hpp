#pragma once

// Conjunctions of complete k_i-partite graphs and the Gaussian integers.
//
// Cay(A; A*) for a finite product of local rings A = A_1 x ... x A_r is the
// conjunction of complete k_i-partite graphs with k_i = #(A_i / m_i): two
// elements are adjacent iff they lie in different residue classes modulo
// every maximal ideal. For a Dedekind domain R and I = prod m_i^a_i, CRT
// splits R/I into the local rings R/m_i^a_i, so the same holds with
// k_i = #(R/m_i). Here R = Z[i] is the worked example.

#include <array>
#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "ucg/core_model.hpp"
#include "ucg/graycycle.hpp"
#include "ucg/search.hpp"

namespace ucg {

/// Labels differ in every coordinate. Finite coordinates are range-checked;
/// throws DomainError on a length mismatch or an out-of-range label.
bool partition_adjacency(const ResidueString& u, const ResidueString& v,
                         const PartitionSignature& sig);

struct LocalFactor {
  std::string description;
  std::uint64_t residue_field_size = 0;
  std::uint64_t ring_size = 0;  // PartitionSignature::kInfinite if infinite
  std::string maximal_ideal;
};

struct SignatureResult {
  SearchResult search;
  // True when the value comes from the Gray-code construction and the
  // matching upper bound rather than from a search.
  bool closed_form = false;
  std::string note;
};

/// Longest induced cycle over a fixed signature:
///   r >= 2 with at most one k_i = 2 -> 2^r + 2 with a constructed witness,
///   r = 1 -> 4 (parts of any size, witness 0,1,0,1),
///   two or more k_i = 2 -> exhaustive search with per-column caps.
SignatureResult longest_for_signature(
    const PartitionSignature& sig,
    std::chrono::duration<double> budget = std::chrono::seconds(60));

struct Gaussian {
  std::int64_t re = 0;
  std::int64_t im = 0;

  friend bool operator==(const Gaussian&, const Gaussian&) = default;
};

std::string to_string(const Gaussian& z);

enum class PrimeKind { kRamified, kSplit, kInert };

struct GaussianPrimeFactor {
  Gaussian prime;          // normalized generator of the maximal ideal
  unsigned exponent = 0;   // multiplicity in the modulus
  std::uint64_t rational_prime = 0;
  PrimeKind kind{};
  std::uint64_t residue_field_size = 0;  // p, or p^2 when inert
  // Image of i in Z[i]/(prime) = F_p for split and ramified primes.
  std::uint64_t i_image = 0;
};

struct GaussianModulus {
  Gaussian modulus;
  std::uint64_t norm = 0;
  std::vector<GaussianPrimeFactor> factors;

  std::size_t r() const { return factors.size(); }
  PartitionSignature signature() const;
  std::vector<LocalFactor> local_factors() const;
};

/// Parses "a+bi", "a-bi", "a", "bi", "i", "-i" and similar.
Gaussian parse_gaussian(const std::string& text);

/// Prime ideal factorization of (a + bi). Throws DomainError when the norm
/// is below 2.
GaussianModulus gaussian_factorize(std::int64_t a, std::int64_t b);

/// Labels x by its class modulo each maximal ideal: split and ramified
/// primes map c + di to (c + d * i_image) mod p, inert primes to
/// (c mod p) + (d mod p) * p.
ResidueString gaussian_partition_rep(const Gaussian& x,
                                     const GaussianModulus& gm);

/// Longest induced cycle in Cay(Z[i]/(a+bi); units).
ClosedFormLength gaussian_longest(const GaussianModulus& gm);

}  // namespace ucg
