#include "ucg/verifier.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

namespace ucg {

namespace {

using u128 = unsigned __int128;

bool consecutive(std::size_t i, std::size_t j, std::size_t k) {
  return (i + 1) % k == j || (j + 1) % k == i;
}

}  // namespace

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kConsecutiveSimilar:
      return "consecutive-similar";
    case ViolationKind::kNonconsecutiveDisjoint:
      return "nonconsecutive-disjoint";
    case ViolationKind::kDuplicateRows:
      return "duplicate-rows";
    case ViolationKind::kRange:
      return "range";
  }
  return "unknown";
}

bool VerificationReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

std::string VerificationReport::summary() const {
  if (ok) return "ok";
  std::ostringstream os;
  for (std::size_t n = 0; n < violations.size(); ++n) {
    const auto& v = violations[n];
    if (n) os << "; ";
    os << to_string(v.kind) << " (" << v.i << ", " << v.j << ")";
  }
  return os.str();
}

VerificationReport verify_induced_cycle(const CycleArray& c) {
  VerificationReport report;
  const std::size_t k = c.k();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const auto sim = similarity_count(c.row(i), c.row(j));
      if (consecutive(i, j, k)) {
        if (sim != 0) {
          report.violations.push_back({i, j, ViolationKind::kConsecutiveSimilar});
        }
      } else if (sim == 0) {
        report.violations.push_back({i, j, ViolationKind::kNonconsecutiveDisjoint});
      }
      if (k > 4 && c.row(i) == c.row(j)) {
        report.violations.push_back({i, j, ViolationKind::kDuplicateRows});
      }
    }
  }

  // Range check against an attached modulus or partition signature. For a
  // range violation, (i, j) is (row, column).
  std::vector<std::uint64_t> limits;
  if (const auto* m = std::get_if<Modulus>(&c.governor())) {
    for (const auto& f : m->factors()) limits.push_back(f.prime);
  } else if (const auto* s = std::get_if<PartitionSignature>(&c.governor())) {
    limits = s->parts();
  }
  if (!std::holds_alternative<std::monostate>(c.governor())) {
    if (limits.size() != c.r()) {
      report.violations.push_back({0, c.r(), ViolationKind::kRange});
    } else {
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < c.r(); ++j) {
          if (limits[j] != PartitionSignature::kInfinite &&
              c.at(i, j) >= limits[j]) {
            report.violations.push_back({i, j, ViolationKind::kRange});
          }
        }
      }
    }
  }
  report.ok = report.violations.empty();
  return report;
}

VerificationReport verify_integer_cycle(const std::vector<std::int64_t>& vertices,
                                        std::uint64_t n) {
  const auto m = radical(factorize(n));
  std::vector<ResidueString> rows;
  rows.reserve(vertices.size());
  for (auto v : vertices) rows.push_back(residue_rep(v, m));
  auto report = verify_induced_cycle(CycleArray(std::move(rows), m));

  // A cycle visits distinct vertices of Z_n; equal residue rows alone are
  // allowed (they occur when n is not square-free).
  const auto nn = static_cast<__int128>(n);
  auto reduce = [nn](std::int64_t v) {
    auto t = static_cast<__int128>(v) % nn;
    return t < 0 ? t + nn : t;
  };
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (reduce(vertices[i]) == reduce(vertices[j])) {
        Violation v{i, j, ViolationKind::kDuplicateRows};
        if (std::find(report.violations.begin(), report.violations.end(), v) ==
            report.violations.end()) {
          report.violations.push_back(v);
        }
      }
    }
  }
  report.ok = report.violations.empty();
  return report;
}

std::optional<SetPairViolation> check_set_pairs(const SetPairSystem& s) {
  auto well_formed = [&](const std::vector<Token>& t) {
    if (t.size() != s.r) return false;
    for (std::size_t c = 0; c < t.size(); ++c) {
      if (t[c].column != c) return false;
    }
    return true;
  };
  auto meets = [](const std::vector<Token>& a, const std::vector<Token>& b) {
    for (std::size_t c = 0; c < a.size(); ++c) {
      if (a[c].residue == b[c].residue) return true;
    }
    return false;
  };
  for (std::size_t j = 0; j < s.h(); ++j) {
    if (!well_formed(s.pairs[j].a) || !well_formed(s.pairs[j].b)) {
      return SetPairViolation{1, j, j};
    }
  }
  for (std::size_t j = 0; j < s.h(); ++j) {
    if (meets(s.pairs[j].a, s.pairs[j].b)) return SetPairViolation{2, j, j};
  }
  for (std::size_t i = 0; i < s.h(); ++i) {
    for (std::size_t j = i + 1; j < s.h(); ++j) {
      if (!meets(s.pairs[i].a, s.pairs[j].b)) return SetPairViolation{3, i, j};
    }
  }
  return std::nullopt;
}

SetPairSystem build_set_pairs(const CycleArray& c) {
  if (c.r() < 2) {
    throw DomainError(
        "set pairs need r >= 2: with one column, repeated residue rows break "
        "the row-to-vertex injection");
  }
  auto tokens = [&](std::size_t row) {
    std::vector<Token> t;
    t.reserve(c.r());
    for (std::size_t col = 0; col < c.r(); ++col) {
      t.push_back({col, c.at(row, col)});
    }
    return t;
  };
  SetPairSystem s;
  s.r = c.r();
  for (std::size_t j = 0; j + 2 < c.k(); ++j) {
    s.pairs.push_back({tokens(j), tokens(j + 1)});
  }
  if (auto v = check_set_pairs(s)) {
    std::ostringstream os;
    os << "set-pair condition (" << v->condition << ") fails at pair";
    if (v->condition == 3) {
      os << "s (" << v->i << ", " << v->j << ")";
    } else {
      os << ' ' << v->i;
    }
    throw SetPairError(os.str(), *v);
  }
  return s;
}

VectorSampler seeded_sampler(std::uint64_t seed) {
  return [rng = std::mt19937_64(seed)]() mutable {
    std::array<std::int64_t, 2> z{};
    for (auto& e : z) e = 1 + static_cast<std::int64_t>(rng() % 1000000);
    return z;
  };
}

std::size_t exact_rank(std::vector<std::vector<BigInt>> rows) {
  const std::size_t m = rows.size();
  if (m == 0) return 0;
  const std::size_t n = rows.front().size();
  std::size_t rank = 0;
  BigInt prev = 1;
  for (std::size_t col = 0; col < n && rank < m; ++col) {
    std::size_t pivot = rank;
    while (pivot < m && rows[pivot][col] == 0) ++pivot;
    if (pivot == m) continue;
    std::swap(rows[pivot], rows[rank]);
    const BigInt& p = rows[rank][col];
    for (std::size_t i = rank + 1; i < m; ++i) {
      for (std::size_t j = col + 1; j < n; ++j) {
        rows[i][j] = (p * rows[i][j] - rows[i][col] * rows[rank][j]) / prev;
      }
      rows[i][col] = 0;
    }
    prev = p;
    ++rank;
  }
  return rank;
}

std::size_t rank_mod_p(const std::vector<std::vector<BigInt>>& rows,
                       std::uint64_t p) {
  const std::size_t m = rows.size();
  if (m == 0) return 0;
  const std::size_t n = rows.front().size();
  const BigInt bp = p;
  std::vector<std::vector<std::uint64_t>> a(m, std::vector<std::uint64_t>(n));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      BigInt t = rows[i][j] % bp;
      if (t < 0) t += bp;
      a[i][j] = t.convert_to<std::uint64_t>();
    }
  }
  auto mul = [p](std::uint64_t x, std::uint64_t y) {
    return static_cast<std::uint64_t>(static_cast<u128>(x) * y % p);
  };
  auto inv = [&](std::uint64_t x) {
    std::uint64_t result = 1, e = p - 2;
    while (e) {
      if (e & 1) result = mul(result, x);
      x = mul(x, x);
      e >>= 1;
    }
    return result;
  };
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < m; ++col) {
    std::size_t pivot = rank;
    while (pivot < m && a[pivot][col] == 0) ++pivot;
    if (pivot == m) continue;
    std::swap(a[pivot], a[rank]);
    const auto pinv = inv(a[rank][col]);
    for (std::size_t i = rank + 1; i < m; ++i) {
      if (a[i][col] == 0) continue;
      const auto f = mul(a[i][col], pinv);
      for (std::size_t j = col; j < n; ++j) {
        a[i][j] = (a[i][j] + p - mul(f, a[rank][j])) % p;
      }
    }
    ++rank;
  }
  return rank;
}

RankCertificate rank_certificate(const SetPairSystem& s, std::uint64_t seed) {
  return rank_certificate(s, seed, seeded_sampler(seed));
}

RankCertificate rank_certificate(const SetPairSystem& s, std::uint64_t seed,
                                 const VectorSampler& sampler) {
  if (auto v = check_set_pairs(s)) {
    throw SetPairError("set-pair system violates condition (" +
                           std::to_string(v->condition) + ")",
                       *v);
  }
  RankCertificate cert;
  cert.h = s.h();
  cert.r = s.r;
  cert.seed = seed;

  // Tokens per column, in residue order.
  std::vector<std::vector<Residue>> tokens(s.r);
  for (const auto& pair : s.pairs) {
    for (std::size_t c = 0; c < s.r; ++c) {
      tokens[c].push_back(pair.a[c].residue);
      tokens[c].push_back(pair.b[c].residue);
    }
  }
  std::vector<std::map<Residue, std::array<std::int64_t, 2>>> z(s.r);
  for (std::size_t c = 0; c < s.r; ++c) {
    auto& col = tokens[c];
    std::sort(col.begin(), col.end());
    col.erase(std::unique(col.begin(), col.end()), col.end());
    bool general = false;
    for (int attempt = 0; attempt < kSamplingRetries && !general; ++attempt) {
      std::vector<std::array<std::int64_t, 2>> vecs;
      for (std::size_t t = 0; t < col.size(); ++t) vecs.push_back(sampler());
      general = true;
      for (std::size_t a = 0; a < vecs.size() && general; ++a) {
        for (std::size_t b = a + 1; b < vecs.size() && general; ++b) {
          const __int128 det =
              static_cast<__int128>(vecs[a][0]) * vecs[b][1] -
              static_cast<__int128>(vecs[a][1]) * vecs[b][0];
          general = det != 0;
        }
      }
      if (general) {
        for (std::size_t t = 0; t < col.size(); ++t) z[c][col[t]] = vecs[t];
      }
    }
    if (!general) {
      throw CertificationUnavailable(
          "token vectors not in general position after " +
          std::to_string(kSamplingRetries) + " attempts in column " +
          std::to_string(c));
    }
  }
  cert.vectors.resize(s.r);
  for (std::size_t c = 0; c < s.r; ++c) {
    cert.vectors[c].assign(z[c].begin(), z[c].end());
  }

  const std::size_t h = s.h();
  cert.pairing.assign(h, std::vector<BigInt>(h));
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t j = 0; j < h; ++j) {
      BigInt prod = 1;
      for (std::size_t c = 0; c < s.r && prod != 0; ++c) {
        const auto& u = z[c].at(s.pairs[i].a[c].residue);
        const auto& v = z[c].at(s.pairs[j].b[c].residue);
        prod *= BigInt(u[0]) * v[1] - BigInt(u[1]) * v[0];
      }
      cert.pairing[i][j] = std::move(prod);
    }
  }
  cert.pairing_triangular = true;
  for (std::size_t i = 0; i < h; ++i) {
    if (cert.pairing[i][i] == 0) cert.pairing_triangular = false;
    for (std::size_t j = i + 1; j < h; ++j) {
      if (cert.pairing[i][j] != 0) cert.pairing_triangular = false;
    }
  }

  // y_j = z_0(A_j) (x) z_1(A_j) (x) ... ; entry index bits read column 0 as
  // the most significant.
  const std::size_t dim = std::size_t{1} << s.r;
  std::vector<std::vector<BigInt>> y(h, std::vector<BigInt>(dim));
  for (std::size_t j = 0; j < h; ++j) {
    for (std::size_t idx = 0; idx < dim; ++idx) {
      BigInt e = 1;
      for (std::size_t c = 0; c < s.r; ++c) {
        const auto bit = (idx >> (s.r - 1 - c)) & 1;
        e *= z[c].at(s.pairs[j].a[c].residue)[bit];
      }
      y[j][idx] = std::move(e);
    }
  }
  if (h <= kFractionFreeMaxRows) {
    cert.rank_method = RankMethod::kFractionFree;
    cert.tensor_rank = exact_rank(y);
  } else {
    // Full rank modulo a prime is full rank over the rationals.
    cert.rank_method = RankMethod::kModular;
    for (std::uint64_t p : {2305843009213693951ULL, 4611686018427387847ULL,
                            1000000000000000003ULL}) {
      cert.tensor_rank = std::max(cert.tensor_rank, rank_mod_p(y, p));
      if (cert.tensor_rank == h) break;
    }
  }
  cert.certified = cert.pairing_triangular && cert.tensor_rank == h;
  return cert;
}

std::string RankCertificate::to_text() const {
  std::ostringstream os;
  os << "rank-certificate\n";
  os << "h " << h << "\nr " << r << "\nseed " << seed << '\n';
  for (std::size_t c = 0; c < vectors.size(); ++c) {
    os << "column " << c << '\n';
    for (const auto& [residue, z] : vectors[c]) {
      os << "  " << residue << " : " << z[0] << ' ' << z[1] << '\n';
    }
  }
  os << "pairing\n";
  for (const auto& row : pairing) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      os << (j ? " " : "  ") << row[j];
    }
    os << '\n';
  }
  os << "triangular " << (pairing_triangular ? "yes" : "no") << '\n';
  os << "tensor-rank " << tensor_rank << ' '
     << (rank_method == RankMethod::kFractionFree ? "fraction-free" : "modular")
     << '\n';
  os << "verdict " << (certified ? "certified" : "not-certified") << ": h = "
     << h << (certified ? " <= " : " ? ") << "2^" << r << " = "
     << (std::uint64_t{1} << r) << '\n';
  return os.str();
}

BigInt residue_bound(const std::vector<std::uint64_t>& caps) {
  BigInt all = 1, neighbours = 1;
  for (auto k : caps) {
    if (k < 2) throw DomainError("residue-set sizes must be at least 2");
    all *= k;
    neighbours *= k - 1;
  }
  return all - neighbours + 2;
}

TheoreticalBounds theoretical_bounds(std::size_t r,
                                     std::optional<std::uint64_t> a) {
  if (r < 1 || r > 62) throw DomainError("r must be in [1, 62]");
  TheoreticalBounds b;
  b.upper = r == 1 ? 4 : (std::uint64_t{1} << r) + 2;
  if (a) b.residue_bound = residue_bound(std::vector<std::uint64_t>(r, *a));
  return b;
}

}  // namespace ucg
