#include "ucg/graycycle.hpp"

#include <sstream>

#include "ucg/verifier.hpp"

namespace ucg {

GraySequence rgc(std::size_t r) {
  if (r < 1 || r > kMaxGrayBits) {
    throw DomainError("Gray code width must be in [1, 20]");
  }
  std::vector<std::vector<std::uint8_t>> words{{0}, {1}};
  for (std::size_t width = 2; width <= r; ++width) {
    std::vector<std::vector<std::uint8_t>> next;
    next.reserve(words.size() * 2);
    for (const auto& w : words) {
      std::vector<std::uint8_t> x{0};
      x.insert(x.end(), w.begin(), w.end());
      next.push_back(std::move(x));
    }
    for (auto it = words.rbegin(); it != words.rend(); ++it) {
      std::vector<std::uint8_t> x{1};
      x.insert(x.end(), it->begin(), it->end());
      next.push_back(std::move(x));
    }
    words = std::move(next);
  }

  GraySequence g;
  g.r = r;
  g.flips.assign(words.size(), 0);
  for (std::size_t i = 1; i < words.size(); ++i) {
    for (std::size_t b = 0; b < r; ++b) {
      if (words[i][b] != words[i - 1][b]) {
        g.flips[i] = b + 1;
        break;
      }
    }
  }
  g.codewords = std::move(words);
  return g;
}

ResidueString hatted_codeword(const GraySequence& g, std::size_t i) {
  if (i >= g.size() / 2) {
    throw DomainError("hatted codeword index must be below 2^(r-1)");
  }
  std::vector<Residue> terms(g.codewords[i].begin(), g.codewords[i].end());
  if (i > 0) terms[g.flips[i] - 1] = 2;
  return ResidueString(std::move(terms));
}

CycleArray construct_cycle(std::size_t r) {
  if (r < 2 || r > kMaxGrayBits) {
    throw DomainError("construction needs 2 <= r <= 20");
  }
  const auto g = rgc(r);
  const std::size_t half = g.size() / 2;
  std::vector<ResidueString> rows;
  rows.reserve(g.size() + 2);
  for (std::size_t i = 0; i < half; ++i) {
    rows.push_back(hatted_codeword(g, i));
    std::vector<Residue> complement(r);
    for (std::size_t b = 0; b < r; ++b) complement[b] = 1 - g.codewords[i][b];
    rows.emplace_back(std::move(complement));
  }
  std::vector<Residue> penultimate(r, 0);
  penultimate[1] = 1;
  std::vector<Residue> last(r, 2);
  last[0] = 1;
  rows.emplace_back(std::move(penultimate));
  rows.emplace_back(std::move(last));
  return CycleArray(std::move(rows));
}

SmallCycle construct_small(std::uint64_t p, unsigned a) {
  if (a == 0) throw DomainError("prime exponent must be positive");
  const auto m = Modulus::from_factors({{p, a}});
  if (factorize(p).factors() != std::vector<PrimePower>{{p, 1}}) {
    throw DomainError("construct_small needs a prime");
  }
  SmallCycle out;
  if (a == 1) {
    if (p == 2) throw DomainError("no induced cycle exists in X_2");
    out.vertices = {0, 1, 2};
    out.justification = "X_p is the complete graph K_p; 0, 1, 2 is a triangle";
  } else {
    out.vertices = {0, 1, p, p + 1};
    out.justification =
        "X_{p^a} is complete p-partite; 0, 1, p, p+1 alternate between the "
        "classes of 0 and 1 mod p";
  }
  std::vector<ResidueString> rows;
  for (auto v : out.vertices) {
    rows.push_back(residue_rep(static_cast<std::int64_t>(v), m));
  }
  out.rows = CycleArray(std::move(rows), m);
  return out;
}

CycleArray lift_cycle(const CycleArray& c) {
  const auto report = verify_induced_cycle(c);
  if (!report.ok) {
    throw DomainError("cannot lift a non-induced cycle: " + report.summary());
  }
  const std::size_t k = c.k();
  std::vector<ResidueString> rows;
  rows.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    Residue lead = i % 2;
    if (k % 2 == 1 && i == k - 1) lead = 2;
    std::vector<Residue> terms{lead};
    terms.insert(terms.end(), c.row(i).begin(), c.row(i).end());
    rows.emplace_back(std::move(terms));
  }
  return CycleArray(std::move(rows));
}

std::string to_string(LengthCase tag) {
  switch (tag) {
    case LengthCase::kNoCycle:
      return "no-cycle";
    case LengthCase::kPrime:
      return "prime";
    case LengthCase::kPrimePower:
      return "prime-power";
    case LengthCase::kMultiPrime:
      return "multi-prime";
  }
  return "unknown";
}

ClosedFormLength closed_form_length(const Modulus& m) {
  ClosedFormLength out;
  if (m.r() == 1) {
    const auto& f = m.factors().front();
    if (f.exponent >= 2) {
      out.value = 4;
      out.tag = LengthCase::kPrimePower;
      out.justification =
          "X_{p^a} is complete p-partite: (0, 1, p, p+1) is an induced "
          "4-cycle and repeated residue rows cap the length at 4";
    } else if (f.prime == 2) {
      out.value = 0;
      out.tag = LengthCase::kNoCycle;
      out.justification = "X_2 is a single edge";
    } else {
      out.value = 3;
      out.tag = LengthCase::kPrime;
      out.justification = "X_p is the complete graph K_p";
    }
    return out;
  }
  std::ostringstream why;
  why << "lower bound: Gray-code construction of length 2^r + 2 over residues "
         "{0,1,2} (first column {0,1}); upper bound: set-pair family "
         "A_j = W_j, B_j = W_{j+1} gives k - 2 <= 2^r; prime multiplicities "
         "do not change the value (r = "
      << m.r() << ")";
  out.value = (std::uint64_t{1} << m.r()) + 2;
  out.tag = LengthCase::kMultiPrime;
  out.justification = why.str();
  return out;
}

}  // namespace ucg
