#pragma once

// Exhaustive search for longest induced cycles in residue arrays.
//
// The search builds induced paths row by row. Row 0 is fixed to 0...0 and
// row 1 to 1...1, which loses nothing because any cycle can be relabeled
// column-wise so that its first edge looks like that. Every later row may
// only use labels already seen in its column or the next fresh one (while
// the column cap allows), so each column-relabeling class is visited once.
// Rotations and reflections of a cycle are not identified.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ucg/core_model.hpp"

namespace ucg {

enum class SearchMode { kLongest, kEnumerate, kDecide };

struct SearchProgress {
  std::uint64_t nodes_expanded = 0;
  std::size_t depth = 0;
  std::size_t incumbent = 0;
};

using ProgressHook = std::function<void(const SearchProgress&)>;

struct SearchConfig {
  std::size_t r = 0;
  // Maximum number of distinct residues per column; PartitionSignature's
  // infinite sentinel is accepted and treated as 3.
  std::vector<std::uint64_t> alphabet;
  // Cycle length for kEnumerate and kDecide.
  std::optional<std::size_t> target;
  std::chrono::duration<double> budget = std::chrono::seconds(60);
  std::size_t workers = 1;
  SearchMode mode = SearchMode::kLongest;
  // Rows may repeat; models vertices that share a residue string (moduli
  // with a repeated prime, or parts with more than one vertex).
  bool allow_repeated_rows = false;
  // Stop once the incumbent reaches 2^r + 2 (4 for r = 1), the proven
  // maximum. Without it only the residue-count bound stops the search.
  bool theory_cap = true;
  // Starting witness; must verify and fit the alphabet.
  std::optional<CycleArray> incumbent;
  ProgressHook progress;

  static SearchConfig per_column(std::vector<std::uint64_t> caps);
  static SearchConfig global_cap(std::size_t r, std::uint64_t a);
};

struct SearchResult {
  std::size_t best_length = 0;
  std::optional<CycleArray> witness;  // canonical form
  bool exhaustive = false;
  // True when the search stopped because best_length met an upper bound.
  bool stopped_at_bound = false;
  std::uint64_t nodes_expanded = 0;
  std::chrono::duration<double> elapsed{};
  // Integer vertices, filled by the brute-force oracle only.
  std::vector<std::uint64_t> vertices;
};

/// Longest induced cycle within the alphabet caps (mode kLongest), or
/// whether a cycle of exactly *target rows exists (mode kDecide; then
/// best_length is the target when found and 0 otherwise). A budget
/// overrun returns exhaustive = false. Throws DomainError for an invalid
/// configuration.
SearchResult search_longest(const SearchConfig& cfg);

struct EnumerationSummary {
  std::uint64_t count = 0;
  bool truncated = false;
  std::uint64_t nodes_expanded = 0;
  std::chrono::duration<double> elapsed{};
};

/// Calls sink on every canonical induced cycle of length *target, in a
/// deterministic order. sink returns false to stop early (reported as
/// truncated). Runs on the calling thread.
EnumerationSummary enumerate_canonical_cycles(
    const SearchConfig& cfg, const std::function<bool(const CycleArray&)>& sink);

/// Largest size the alphabet may span (product of capped column sizes).
inline constexpr std::size_t kMaxRowSpace = 8192;

/// Longest induced cycle of an explicit graph by plain depth-first search
/// over vertex sequences (each cycle is found from its smallest vertex).
/// Returns the cycle's vertex list in `vertices`.
SearchResult longest_induced_cycle_naive(
    const std::vector<std::vector<bool>>& adjacency);

/// M(n) for 3 <= n <= 64 from X_n built with gcd adjacency.
SearchResult brute_force_oracle(std::uint64_t n);

}  // namespace ucg
