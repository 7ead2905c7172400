#include "ucg/core_model.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace ucg {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  for (b %= m; e; e >>= 1) {
    if (e & 1) result = mul_mod(result, b, m);
    b = mul_mod(b, b, m);
  }
  return result;
}

// Miller-Rabin with the first twelve primes as bases, exact below 2^64.
bool is_prime(std::uint64_t n) {
  constexpr std::uint64_t bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (n < 2) return false;
  for (auto p : bases) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  for (; d % 2 == 0; d /= 2) ++s;
  for (auto a : bases) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s && composite; ++i) {
      x = mul_mod(x, x, n);
      composite = x != n - 1;
    }
    if (composite) return false;
  }
  return true;
}

// Inverse of a modulo m for gcd(a, m) == 1.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m);
  std::int64_t new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

}  // namespace

Modulus Modulus::from_factors(std::vector<PrimePower> factors) {
  if (factors.empty()) {
    throw DomainError("modulus must have a prime divisor");
  }
  Modulus m;
  u128 n = 1;
  std::uint64_t prev = 1;
  for (const auto& f : factors) {
    if (f.prime < 2 || f.prime <= prev) {
      throw DomainError("primes must be strictly increasing and >= 2");
    }
    if (f.exponent == 0) {
      throw DomainError("prime exponents must be positive");
    }
    if (!is_prime(f.prime)) {
      throw DomainError(std::to_string(f.prime) + " is not prime");
    }
    for (unsigned e = 0; e < f.exponent; ++e) {
      n *= f.prime;
      if (n > std::numeric_limits<std::uint64_t>::max()) {
        throw DomainError("modulus exceeds 64 bits");
      }
    }
    prev = f.prime;
  }
  m.factors_ = std::move(factors);
  m.n_ = static_cast<std::uint64_t>(n);
  return m;
}

bool Modulus::square_free() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](const PrimePower& f) { return f.exponent == 1; });
}

std::string Modulus::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) os << " * ";
    os << factors_[i].prime;
    if (factors_[i].exponent > 1) os << '^' << factors_[i].exponent;
  }
  return os.str();
}

PartitionSignature::PartitionSignature(std::vector<std::uint64_t> parts)
    : parts_(std::move(parts)) {
  if (parts_.empty()) {
    throw DomainError("partition signature needs at least one factor");
  }
  for (auto k : parts_) {
    if (k < 2) throw DomainError("part counts must be at least 2");
  }
}

std::string PartitionSignature::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) os << ',';
    if (parts_[i] == kInfinite) {
      os << "inf";
    } else {
      os << parts_[i];
    }
  }
  os << '}';
  return os.str();
}

std::string ResidueString::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) os << ' ';
    os << terms_[i];
  }
  return os.str();
}

CycleArray::CycleArray(std::vector<ResidueString> rows, Governor gov)
    : rows_(std::move(rows)), gov_(std::move(gov)) {
  if (rows_.size() < 3) {
    throw DomainError("a cycle array needs at least 3 rows");
  }
  const auto width = rows_.front().size();
  for (const auto& row : rows_) {
    if (row.size() != width) throw DomainError("cycle array rows are ragged");
  }
}

CycleArray CycleArray::with_governor(Governor gov) const {
  CycleArray out = *this;
  out.gov_ = std::move(gov);
  return out;
}

ColumnAlphabet alphabet(const CycleArray& c) {
  ColumnAlphabet a;
  a.per_column.resize(c.r());
  for (const auto& row : c.rows()) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      a.per_column[j].push_back(row[j]);
      a.overall.push_back(row[j]);
    }
  }
  auto dedupe = [](std::vector<Residue>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  for (auto& col : a.per_column) dedupe(col);
  dedupe(a.overall);
  return a;
}

Modulus factorize(std::uint64_t n) {
  if (n < 2) throw DomainError("modulus must have a prime divisor");
  std::vector<PrimePower> factors;
  for (std::uint64_t p = 2; p <= n / p; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    PrimePower f{p, 0};
    while (n % p == 0) {
      n /= p;
      ++f.exponent;
    }
    factors.push_back(f);
  }
  if (n > 1) factors.push_back({n, 1});
  return Modulus::from_factors(std::move(factors));
}

Modulus radical(const Modulus& m) {
  auto factors = m.factors();
  for (auto& f : factors) f.exponent = 1;
  return Modulus::from_factors(std::move(factors));
}

ResidueString residue_rep(std::int64_t x, const Modulus& m) {
  std::vector<Residue> terms;
  terms.reserve(m.r());
  for (const auto& f : m.factors()) {
    // Reduce through __int128 so that x = INT64_MIN and large primes are safe.
    __int128 p = f.prime;
    __int128 t = static_cast<__int128>(x) % p;
    if (t < 0) t += p;
    terms.push_back(static_cast<Residue>(t));
  }
  return ResidueString(std::move(terms));
}

std::uint64_t crt_min_rep(const ResidueString& s, const Modulus& m) {
  if (s.size() != m.r()) {
    throw DomainError("residue string length does not match modulus");
  }
  // Incremental CRT: x is correct modulo the product of the primes so far.
  std::uint64_t x = 0;
  std::uint64_t prod = 1;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const std::uint64_t p = m.prime(i);
    if (s[i] >= p) throw DomainError("residue out of range for its prime");
    // x + prod * t == s[i] (mod p)
    const std::uint64_t cur = x % p;
    const std::uint64_t diff = (s[i] + p - cur) % p;
    const std::uint64_t t = mul_mod(diff, inv_mod(prod % p, p), p);
    x += prod * t;
    prod *= p;
  }
  return x;
}

std::size_t similarity_count(const ResidueString& a, const ResidueString& b) {
  if (a.size() != b.size()) {
    throw DomainError("residue strings have different lengths");
  }
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.size(); ++i) count += (a[i] == b[i]);
  return count;
}

std::vector<std::vector<std::size_t>> similarity_matrix(const CycleArray& c) {
  const auto k = c.k();
  std::vector<std::vector<std::size_t>> s(k, std::vector<std::size_t>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      s[i][j] = similarity_count(c.row(i), c.row(j));
    }
  }
  return s;
}

CycleArray canonical_form(const CycleArray& c) {
  if (!adjacent(c.row(0), c.row(1))) {
    throw DomainError("first edge not adjacent");
  }
  std::vector<ResidueString> rows(c.rows());
  for (std::size_t j = 0; j < c.r(); ++j) {
    std::map<Residue, Residue> relabel;
    for (auto& row : rows) {
      auto [it, fresh] = relabel.try_emplace(row[j], relabel.size());
      row[j] = it->second;
    }
  }
  return CycleArray(std::move(rows), c.governor());
}

}  // namespace ucg
