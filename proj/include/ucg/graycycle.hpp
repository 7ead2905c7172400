#pragma once

// Reflected Gray codes and the explicit (2^r + 2)-cycle built from them.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ucg/core_model.hpp"

namespace ucg {

/// The 2^r codewords of the r-bit reflected Gray code, G_0 = 0...0.
struct GraySequence {
  std::size_t r = 0;
  // codewords[i][b] is bit b (0-based from the left) of G_i.
  std::vector<std::vector<std::uint8_t>> codewords;
  // flips[i] is the 1-based position from the left of the bit changed
  // from G_{i-1} to G_i; flips[0] is unused and set to 0.
  std::vector<std::size_t> flips;

  std::size_t size() const { return codewords.size(); }
};

inline constexpr std::size_t kMaxGrayBits = 20;

/// Recursive construction: 0-prefixed copy of rgc(r-1), then 1-prefixed
/// reversal. Throws DomainError unless 1 <= r <= 20.
GraySequence rgc(std::size_t r);

/// G_i with its flip bit replaced by 2; G_0 is returned unchanged.
/// Requires 0 <= i < 2^(r-1).
ResidueString hatted_codeword(const GraySequence& g, std::size_t i);

/// The induced cycle of length 2^r + 2 over residues {0, 1, 2}:
///   v_{2i} = hatted G_i, v_{2i+1} = complement of G_i  (0 <= i < 2^(r-1)),
///   then 0100...0 and 122...2.
/// Requires 2 <= r <= 20.
CycleArray construct_cycle(std::size_t r);

/// Vertices of a longest induced cycle in X_{p^a} together with their
/// residue rows (modulo p). Throws DomainError for p = 2, a = 1.
struct SmallCycle {
  std::vector<std::uint64_t> vertices;
  CycleArray rows;
  std::string justification;
};
SmallCycle construct_small(std::uint64_t p, unsigned a);

/// Prepends a column that keeps the cycle induced: alternating 0/1 for even
/// k; for odd k the last row gets a 2 instead. Throws DomainError if the
/// input is not an induced cycle.
CycleArray lift_cycle(const CycleArray& c);

enum class LengthCase { kNoCycle, kPrime, kPrimePower, kMultiPrime };

struct ClosedFormLength {
  std::uint64_t value = 0;
  LengthCase tag = LengthCase::kNoCycle;
  std::string justification;
};

std::string to_string(LengthCase tag);

/// Length of the longest induced cycle in X_n:
///   n = 2 -> 0 (no cycle), n = p -> 3, n = p^a (a >= 2) -> 4,
///   r >= 2 -> 2^r + 2.
ClosedFormLength closed_form_length(const Modulus& m);

}  // namespace ucg
