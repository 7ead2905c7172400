#include "ucg/rings.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "ucg/verifier.hpp"

namespace ucg {

namespace {

using i128 = __int128;

struct Z {
  i128 re = 0;
  i128 im = 0;
};

i128 norm(const Z& z) { return z.re * z.re + z.im * z.im; }
Z mul(const Z& a, const Z& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Z sub(const Z& a, const Z& b) { return {a.re - b.re, a.im - b.im}; }

// Nearest integer to num / den for den > 0.
i128 round_div(i128 num, i128 den) {
  i128 q = num / den;
  i128 rem = num - q * den;
  if (2 * rem > den) ++q;
  if (2 * rem < -den) --q;
  return q;
}

Z gaussian_gcd(Z a, Z b) {
  while (norm(b) != 0) {
    const i128 nb = norm(b);
    const Z num = mul(a, {b.re, -b.im});
    const Z q{round_div(num.re, nb), round_div(num.im, nb)};
    Z rem = sub(a, mul(q, b));
    a = b;
    b = rem;
  }
  return a;
}

// Associate with re > 0 and im >= 0.
Z normalize(Z z) {
  for (int k = 0; k < 4; ++k) {
    if (z.re > 0 && z.im >= 0) return z;
    z = {-z.im, z.re};  // multiply by i
  }
  return z;
}

// Quotient a / b when b divides a exactly.
bool divide_exact(const Z& a, const Z& b, Z& out) {
  const i128 nb = norm(b);
  const Z num = mul(a, {b.re, -b.im});
  if (num.re % nb != 0 || num.im % nb != 0) return false;
  out = {num.re / nb, num.im / nb};
  return true;
}

unsigned valuation(Z a, const Z& pi) {
  unsigned v = 0;
  Z q;
  while (divide_exact(a, pi, q)) {
    a = q;
    ++v;
  }
  return v;
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  unsigned __int128 result = 1, base = b % m;
  while (e) {
    if (e & 1) result = result * base % m;
    base = base * base % m;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(result);
}

// A square root of -1 modulo p for p = 1 (mod 4), from the first quadratic
// non-residue.
std::uint64_t sqrt_minus_one(std::uint64_t p) {
  for (std::uint64_t q = 2; q < p; ++q) {
    if (pow_mod(q, (p - 1) / 2, p) == p - 1) return pow_mod(q, (p - 1) / 4, p);
  }
  throw DomainError("no quadratic non-residue found");
}

std::uint64_t mod_reduce(i128 x, std::uint64_t p) {
  i128 t = x % static_cast<i128>(p);
  if (t < 0) t += p;
  return static_cast<std::uint64_t>(t);
}

}  // namespace

bool partition_adjacency(const ResidueString& u, const ResidueString& v,
                         const PartitionSignature& sig) {
  if (u.size() != sig.r() || v.size() != sig.r()) {
    throw DomainError("partition labels do not match the signature length");
  }
  for (std::size_t i = 0; i < sig.r(); ++i) {
    if (!sig.infinite(i) && (u[i] >= sig.parts()[i] || v[i] >= sig.parts()[i])) {
      throw DomainError("partition label out of range");
    }
  }
  return similarity_count(u, v) == 0;
}

SignatureResult longest_for_signature(const PartitionSignature& sig,
                                      std::chrono::duration<double> budget) {
  SignatureResult out;
  const std::size_t r = sig.r();
  if (r == 1) {
    std::vector<ResidueString> rows{{0}, {1}, {0}, {1}};
    out.search.best_length = 4;
    out.search.witness = CycleArray(std::move(rows), sig);
    out.search.exhaustive = true;
    out.closed_form = true;
    out.note =
        "single complete multipartite factor: two parts with two vertices "
        "each give an induced 4-cycle, and repeated labels cap the length at "
        "4; a concrete ring with one-element parts only realizes 3";
    return out;
  }

  std::vector<std::size_t> binary;
  for (std::size_t i = 0; i < r; ++i) {
    if (sig.parts()[i] == 2) binary.push_back(i);
  }
  if (binary.size() <= 1) {
    // The construction's first column is the only one restricted to {0,1}.
    const auto base = construct_cycle(r);
    const std::size_t lead = binary.empty() ? 0 : binary.front();
    std::vector<std::size_t> source(r);
    source[lead] = 0;
    for (std::size_t i = 0, next = 1; i < r; ++i) {
      if (i != lead) source[i] = next++;
    }
    std::vector<ResidueString> rows;
    for (const auto& row : base.rows()) {
      std::vector<Residue> terms(r);
      for (std::size_t i = 0; i < r; ++i) terms[i] = row[source[i]];
      rows.emplace_back(std::move(terms));
    }
    out.search.witness = CycleArray(std::move(rows), sig);
    out.search.best_length = out.search.witness->k();
    out.search.exhaustive = true;
    out.search.stopped_at_bound = true;
    out.closed_form = true;
    out.note = "Gray-code construction meets the 2^r + 2 upper bound";
    return out;
  }

  auto cfg = SearchConfig::per_column(sig.parts());
  cfg.allow_repeated_rows = true;
  cfg.budget = budget;
  out.search = search_longest(cfg);
  if (out.search.witness) {
    out.search.witness = out.search.witness->with_governor(sig);
  }
  out.note =
      "signature-specific value from exhaustive search; two or more binary "
      "factors fall outside the construction";
  return out;
}

std::string to_string(const Gaussian& z) {
  std::ostringstream os;
  if (z.im == 0) {
    os << z.re;
    return os.str();
  }
  if (z.re != 0) os << z.re << (z.im < 0 ? "-" : "+");
  else if (z.im < 0) os << '-';
  const auto mag = z.im < 0 ? -z.im : z.im;
  if (mag != 1) os << mag;
  os << 'i';
  return os.str();
}

Gaussian parse_gaussian(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) throw DomainError("empty Gaussian integer");
  Gaussian z;
  std::size_t pos = 0;
  auto parse_term = [&](bool& is_imag) -> std::int64_t {
    int sign = 1;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    }
    const std::size_t digits = pos;
    std::int64_t value = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      value = value * 10 + (s[pos] - '0');
      if (value > (std::int64_t{1} << 31)) {
        throw DomainError("Gaussian integer component too large");
      }
      ++pos;
    }
    is_imag = pos < s.size() && s[pos] == 'i';
    if (is_imag) {
      ++pos;
      if (digits == pos - 1) value = 1;
    } else if (digits == pos) {
      throw DomainError("malformed Gaussian integer '" + text + "'");
    }
    return sign * value;
  };
  bool seen_real = false, seen_imag = false;
  while (pos < s.size()) {
    if ((seen_real || seen_imag) && s[pos] != '+' && s[pos] != '-') {
      throw DomainError("malformed Gaussian integer '" + text + "'");
    }
    bool imag = false;
    const auto v = parse_term(imag);
    bool& seen = imag ? seen_imag : seen_real;
    if (seen) throw DomainError("malformed Gaussian integer '" + text + "'");
    seen = true;
    (imag ? z.im : z.re) = v;
  }
  return z;
}

PartitionSignature GaussianModulus::signature() const {
  std::vector<std::uint64_t> parts;
  for (const auto& f : factors) parts.push_back(f.residue_field_size);
  return PartitionSignature(std::move(parts));
}

std::vector<LocalFactor> GaussianModulus::local_factors() const {
  std::vector<LocalFactor> out;
  for (const auto& f : factors) {
    LocalFactor lf;
    std::uint64_t size = 1;
    for (unsigned e = 0; e < f.exponent; ++e) size *= f.residue_field_size;
    std::ostringstream d;
    d << "Z[i]/(" << to_string(f.prime) << ")";
    if (f.exponent > 1) d << "^" << f.exponent;
    lf.description = d.str();
    lf.residue_field_size = f.residue_field_size;
    lf.ring_size = size;
    lf.maximal_ideal = "(" + to_string(f.prime) + ")";
    out.push_back(std::move(lf));
  }
  return out;
}

GaussianModulus gaussian_factorize(std::int64_t a, std::int64_t b) {
  const std::int64_t limit = std::int64_t{1} << 31;
  if (a <= -limit || a >= limit || b <= -limit || b >= limit) {
    throw DomainError("Gaussian modulus components must be below 2^31");
  }
  GaussianModulus gm;
  gm.modulus = {a, b};
  const auto n = static_cast<std::uint64_t>(a * a + b * b);
  gm.norm = n;
  if (n < 2) throw DomainError("Gaussian modulus must not be zero or a unit");

  const Z alpha{a, b};
  const Modulus rational = factorize(n);
  for (const auto& [p, e] : rational.factors()) {
    GaussianPrimeFactor f;
    f.rational_prime = p;
    if (p == 2) {
      f.prime = {1, 1};
      f.exponent = e;
      f.kind = PrimeKind::kRamified;
      f.residue_field_size = 2;
      f.i_image = 1;
      gm.factors.push_back(f);
    } else if (p % 4 == 3) {
      f.prime = {static_cast<std::int64_t>(p), 0};
      f.exponent = e / 2;
      f.kind = PrimeKind::kInert;
      f.residue_field_size = p * p;
      gm.factors.push_back(f);
    } else {
      const auto u = sqrt_minus_one(p);
      const Z pi = normalize(gaussian_gcd({static_cast<i128>(p), 0},
                                          {static_cast<i128>(u), 1}));
      for (const Z& g : {pi, Z{pi.re, -pi.im}}) {
        const unsigned v = valuation(alpha, g);
        if (v == 0) continue;
        GaussianPrimeFactor s = f;
        s.prime = {static_cast<std::int64_t>(g.re),
                   static_cast<std::int64_t>(g.im)};
        s.exponent = v;
        s.kind = PrimeKind::kSplit;
        s.residue_field_size = p;
        // g = x + yi = 0 in the quotient, so i = -x / y.
        const auto y_inv = pow_mod(mod_reduce(g.im, p), p - 2, p);
        s.i_image = static_cast<std::uint64_t>(
            static_cast<unsigned __int128>(mod_reduce(-g.re, p)) * y_inv % p);
        gm.factors.push_back(s);
      }
    }
  }
  return gm;
}

ResidueString gaussian_partition_rep(const Gaussian& x,
                                     const GaussianModulus& gm) {
  std::vector<Residue> terms;
  terms.reserve(gm.r());
  for (const auto& f : gm.factors) {
    const auto p = f.rational_prime;
    if (f.kind == PrimeKind::kInert) {
      terms.push_back(mod_reduce(x.re, p) + mod_reduce(x.im, p) * p);
    } else {
      terms.push_back(mod_reduce(
          static_cast<i128>(x.re) + static_cast<i128>(x.im) * f.i_image, p));
    }
  }
  return ResidueString(std::move(terms));
}

ClosedFormLength gaussian_longest(const GaussianModulus& gm) {
  ClosedFormLength out;
  if (gm.r() >= 2) {
    out.value = (std::uint64_t{1} << gm.r()) + 2;
    out.tag = LengthCase::kMultiPrime;
    out.justification =
        "conjunction of r complete multipartite graphs with at most one "
        "binary factor: 2^r + 2";
    return out;
  }
  const auto& f = gm.factors.front();
  if (f.exponent >= 2) {
    out.value = 4;
    out.tag = LengthCase::kPrimePower;
    out.justification = "local ring that is not a field: complete multipartite "
                        "with parts of size >= 2";
  } else if (f.residue_field_size >= 3) {
    out.value = 3;
    out.tag = LengthCase::kPrime;
    out.justification = "residue field: complete graph";
  } else {
    out.value = 0;
    out.tag = LengthCase::kNoCycle;
    out.justification = "field with two elements: a single edge";
  }
  return out;
}

}  // namespace ucg
