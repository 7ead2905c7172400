#pragma once

// Induced-cycle checks and the set-pair certificate for k - 2 <= 2^r.
//
// For an induced cycle with rows W_0 .. W_{k-1}, viewed as sets of
// (column, residue) tokens, the pairs A_j = W_j, B_j = W_{j+1}
// (0 <= j < k - 2) form a skew cross-intersecting family:
//   (1) every A_j and B_j holds exactly one token per column,
//   (2) A_j and B_j are disjoint,
//   (3) A_i meets B_j whenever i < j.
// Bollobas-type bounds (Alon's version with one token per column) then give
// k - 2 <= 2^r. The certificate realizes the exterior-algebra proof with
// integer 2-vectors: each token t in column c gets a vector z_{c,t}, the
// pairing of A_i with B_j is the product over columns of the 2x2
// determinants det[z_c(A_i), z_c(B_j)], and the tensor products
// y_j = z_1(A_j) (x) ... (x) z_r(A_j) live in a space of dimension 2^r.
// Conditions (2) and (3) make the pairing matrix lower triangular with a
// nonzero diagonal, so the y_j are linearly independent.
//
// The general theorem allows up to r_i tokens of A_j and s_i tokens of B_j
// in column i and bounds h by prod binom(r_i + s_i, r_i); only the
// r_i = s_i = 1 case is certified here.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ucg/core_model.hpp"

namespace ucg {

using BigInt = boost::multiprecision::cpp_int;

enum class ViolationKind {
  kConsecutiveSimilar,
  kNonconsecutiveDisjoint,
  kDuplicateRows,
  kRange,
};

std::string to_string(ViolationKind kind);

struct Violation {
  std::size_t i = 0;
  std::size_t j = 0;
  ViolationKind kind{};

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct VerificationReport {
  bool ok = true;
  std::vector<Violation> violations;

  bool has(ViolationKind kind) const;
  std::string summary() const;
};

VerificationReport verify_induced_cycle(const CycleArray& c);

/// Checks vertices of X_n through their residue rows. n >= 2, k >= 3.
VerificationReport verify_integer_cycle(const std::vector<std::int64_t>& vertices,
                                        std::uint64_t n);

struct Token {
  std::size_t column = 0;
  Residue residue = 0;

  friend auto operator<=>(const Token&, const Token&) = default;
};

struct SetPair {
  std::vector<Token> a;  // one token per column, in column order
  std::vector<Token> b;
};

struct SetPairSystem {
  std::size_t r = 0;
  std::vector<SetPair> pairs;

  std::size_t h() const { return pairs.size(); }
};

/// A broken set-pair condition: which condition (1, 2 or 3) and the pair
/// indices involved.
struct SetPairViolation {
  int condition = 0;
  std::size_t i = 0;
  std::size_t j = 0;
};

class SetPairError : public DomainError {
 public:
  SetPairError(const std::string& what, SetPairViolation v)
      : DomainError(what), violation_(v) {}
  const SetPairViolation& violation() const { return violation_; }

 private:
  SetPairViolation violation_;
};

/// Returns the first violated condition, if any.
std::optional<SetPairViolation> check_set_pairs(const SetPairSystem& s);

/// A_j = W_j, B_j = W_{j+1} for 0 <= j < k - 2. Requires r >= 2. Throws
/// SetPairError naming the broken condition when the input is not an
/// induced cycle.
SetPairSystem build_set_pairs(const CycleArray& c);

/// Source of integer 2-vectors for the certificate. Called once per token.
using VectorSampler = std::function<std::array<std::int64_t, 2>()>;

/// Seeded sampler with entries uniform in [1, 10^6].
VectorSampler seeded_sampler(std::uint64_t seed);

class CertificationUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RankMethod { kFractionFree, kModular };

struct RankCertificate {
  std::size_t h = 0;
  std::size_t r = 0;
  std::uint64_t seed = 0;
  // Per column: (residue, vector) for each token appearing in the system.
  std::vector<std::vector<std::pair<Residue, std::array<std::int64_t, 2>>>>
      vectors;
  std::vector<std::vector<BigInt>> pairing;  // h x h
  bool pairing_triangular = false;
  std::size_t tensor_rank = 0;
  RankMethod rank_method = RankMethod::kFractionFree;
  bool certified = false;

  /// Deterministic audit text: seed, vectors, pairing matrix, verdict.
  std::string to_text() const;
};

inline constexpr int kSamplingRetries = 32;
inline constexpr std::size_t kFractionFreeMaxRows = 32;

/// Samples token vectors in general position (pairwise non-collinear within
/// each column, at most 32 attempts per column), builds the pairing matrix
/// exactly and checks its triangular shape, then computes the exact rank of
/// the h x 2^r tensor matrix. Throws CertificationUnavailable when general
/// position is not reached and DomainError when the system is invalid.
RankCertificate rank_certificate(const SetPairSystem& s, std::uint64_t seed);
RankCertificate rank_certificate(const SetPairSystem& s, std::uint64_t seed,
                                 const VectorSampler& sampler);

/// Rank over the rationals by fraction-free (Bareiss) elimination.
std::size_t exact_rank(std::vector<std::vector<BigInt>> rows);

/// Rank over Z/pZ; never exceeds the rank over the rationals.
std::size_t rank_mod_p(const std::vector<std::vector<BigInt>>& rows,
                       std::uint64_t p);

struct TheoreticalBounds {
  std::uint64_t upper = 0;
  std::optional<BigInt> residue_bound;
};

/// upper = 2^r + 2 for r >= 2 and 4 for r = 1; with a residue-set size a,
/// residue_bound = a^r - (a-1)^r + 2.
TheoreticalBounds theoretical_bounds(std::size_t r,
                                     std::optional<std::uint64_t> a = {});

/// Per-column version of the residue bound: prod k_i - prod (k_i - 1) + 2.
BigInt residue_bound(const std::vector<std::uint64_t>& caps);

}  // namespace ucg
