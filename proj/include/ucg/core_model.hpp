#pragma once

// Residue representation of vertices of the unitary Cayley graph X_n.
//
// A vertex x of X_n is written as the string of its residues modulo the
// distinct primes p_1 < ... < p_r dividing n. Two vertices are adjacent iff
// their strings differ in every position, so induced cycles become arrays of
// strings with a prescribed pattern of agreements ("similarities").

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ucg {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

using Residue = std::uint64_t;

struct PrimePower {
  std::uint64_t prime = 0;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// A factored positive integer n = p_1^a_1 ... p_r^a_r with p_1 < ... < p_r.
class Modulus {
 public:
  /// Validates the factor list and computes n. Throws DomainError when the
  /// primes are not strictly increasing, an exponent is zero, the list is
  /// empty, or the product does not fit in 64 bits.
  static Modulus from_factors(std::vector<PrimePower> factors);

  const std::vector<PrimePower>& factors() const { return factors_; }
  std::uint64_t n() const { return n_; }
  std::size_t r() const { return factors_.size(); }
  std::uint64_t prime(std::size_t i) const { return factors_.at(i).prime; }
  bool square_free() const;

  std::string to_string() const;

  friend bool operator==(const Modulus&, const Modulus&) = default;

 private:
  Modulus() = default;
  std::vector<PrimePower> factors_;
  std::uint64_t n_ = 1;
};

/// Part counts k_1..k_r of a conjunction of complete k_i-partite graphs.
/// A part count may be infinite.
class PartitionSignature {
 public:
  static constexpr std::uint64_t kInfinite =
      std::numeric_limits<std::uint64_t>::max();

  /// Throws DomainError if empty or a finite entry is below 2.
  explicit PartitionSignature(std::vector<std::uint64_t> parts);

  const std::vector<std::uint64_t>& parts() const { return parts_; }
  std::size_t r() const { return parts_.size(); }
  bool infinite(std::size_t i) const { return parts_.at(i) == kInfinite; }

  std::string to_string() const;

  friend bool operator==(const PartitionSignature&,
                         const PartitionSignature&) = default;

 private:
  std::vector<std::uint64_t> parts_;
};

class ResidueString {
 public:
  ResidueString() = default;
  explicit ResidueString(std::vector<Residue> terms)
      : terms_(std::move(terms)) {}
  ResidueString(std::initializer_list<Residue> terms) : terms_(terms) {}

  std::size_t size() const { return terms_.size(); }
  Residue operator[](std::size_t i) const { return terms_[i]; }
  Residue& operator[](std::size_t i) { return terms_[i]; }
  const std::vector<Residue>& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  std::string to_string() const;

  friend auto operator<=>(const ResidueString&,
                          const ResidueString&) = default;

 private:
  std::vector<Residue> terms_;
};

using Governor = std::variant<std::monostate, Modulus, PartitionSignature>;

/// Ordered rows v_0 .. v_{k-1} of a candidate induced cycle. Row i is
/// consecutive to rows i-1 and i+1 modulo k.
class CycleArray {
 public:
  CycleArray() = default;
  /// Throws DomainError when rows are ragged or fewer than 3.
  explicit CycleArray(std::vector<ResidueString> rows, Governor gov = {});

  std::size_t k() const { return rows_.size(); }
  std::size_t r() const { return rows_.empty() ? 0 : rows_.front().size(); }
  const std::vector<ResidueString>& rows() const { return rows_; }
  const ResidueString& row(std::size_t i) const { return rows_.at(i); }
  Residue at(std::size_t i, std::size_t j) const { return rows_.at(i)[j]; }
  const Governor& governor() const { return gov_; }

  CycleArray with_governor(Governor gov) const;

  friend bool operator==(const CycleArray& a, const CycleArray& b) {
    return a.rows_ == b.rows_;
  }
  friend auto operator<=>(const CycleArray& a, const CycleArray& b) {
    return a.rows_ <=> b.rows_;
  }

 private:
  std::vector<ResidueString> rows_;
  Governor gov_;
};

/// Residues used per column and overall.
struct ColumnAlphabet {
  std::vector<std::vector<Residue>> per_column;  // sorted, unique
  std::vector<Residue> overall;                  // sorted, unique

  std::size_t count(std::size_t column) const {
    return per_column.at(column).size();
  }
};

ColumnAlphabet alphabet(const CycleArray& c);

/// Trial-division factorization. Throws DomainError for n < 2.
Modulus factorize(std::uint64_t n);

/// Same primes, all exponents one.
Modulus radical(const Modulus& m);

/// x reduced modulo each prime of m; negative x is accepted.
ResidueString residue_rep(std::int64_t x, const Modulus& m);

/// Smallest x in [0, radical(m).n()) with residue_rep(x, m) == s.
std::uint64_t crt_min_rep(const ResidueString& s, const Modulus& m);

/// Number of positions at which a and b agree. Zero means adjacent.
std::size_t similarity_count(const ResidueString& a, const ResidueString& b);

inline bool adjacent(const ResidueString& a, const ResidueString& b) {
  return similarity_count(a, b) == 0;
}

/// k x k matrix of pairwise similarity counts.
std::vector<std::vector<std::size_t>> similarity_matrix(const CycleArray& c);

/// Relabels every column by order of first appearance (top to bottom), so
/// row 0 becomes all zeros and row 1 all ones. Throws DomainError
/// "first edge not adjacent" when rows 0 and 1 share a term.
CycleArray canonical_form(const CycleArray& c);

}  // namespace ucg
