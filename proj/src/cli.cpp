#include "ucg/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ucg/core_model.hpp"
#include "ucg/cycle_file.hpp"
#include "ucg/graycycle.hpp"
#include "ucg/rings.hpp"
#include "ucg/search.hpp"
#include "ucg/verifier.hpp"

namespace ucg::cli {

namespace {

using nlohmann::json;

class Fnv1a {
 public:
  void add(std::string_view bytes) {
    for (unsigned char ch : bytes) {
      hash_ ^= ch;
      hash_ *= 0x100000001b3ULL;
    }
    add_separator();
  }
  std::string hex() const {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << hash_;
    return os.str();
  }

 private:
  void add_separator() {
    hash_ ^= 0xff;
    hash_ *= 0x100000001b3ULL;
  }
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json rows_json(const CycleArray& c) {
  json rows = json::array();
  for (const auto& row : c.rows()) rows.push_back(row.terms());
  return rows;
}

json governor_json(const Governor& g) {
  if (const auto* m = std::get_if<Modulus>(&g)) return {{"modulus", m->n()}};
  if (const auto* s = std::get_if<PartitionSignature>(&g)) {
    json parts = json::array();
    for (std::size_t i = 0; i < s->r(); ++i) {
      if (s->infinite(i)) {
        parts.push_back("inf");
      } else {
        parts.push_back(s->parts()[i]);
      }
    }
    return {{"signature", parts}};
  }
  return nullptr;
}

json cycle_json(const CycleArray& c) {
  return {{"r", c.r()}, {"k", c.k()}, {"governor", governor_json(c.governor())},
          {"rows", rows_json(c)}};
}

std::vector<std::uint64_t> parse_list(const std::string& text) {
  std::vector<std::uint64_t> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "inf") {
      values.push_back(PartitionSignature::kInfinite);
      continue;
    }
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw DomainError("expected a comma-separated list of integers, got '" +
                        text + "'");
    }
    values.push_back(v);
  }
  return values;
}

struct Options {
  bool json = false;
  std::uint64_t seed = 0;

  std::uint64_t factor_n = 0;

  std::size_t construct_r = 0;
  std::string construct_out;

  std::string file;
  std::uint64_t verify_modulus = 0;

  std::size_t search_r = 0;
  std::string alphabet;
  std::uint64_t cap = 0;
  double budget = 60;
  std::size_t jobs = 1;
  std::size_t enumerate = 0;
  std::size_t decide = 0;
  bool no_theory_cap = false;
  bool repeat_rows = false;
  bool warm_start = false;
  bool progress = false;

  std::size_t bound_r = 0;
  std::uint64_t bound_cap = 0;

  std::string gaussian;
  bool g_factor = false;
  bool g_longest = false;
  std::string g_rep;
};

struct Outcome {
  std::ostringstream text;
  json payload = json::object();
  bool exhaustive = true;
  int exit_code = kSuccess;
};

void cmd_factor(const Options& o, Outcome& res) {
  const auto m = factorize(o.factor_n);
  const auto rad = radical(m);
  res.text << o.factor_n << " = " << m.to_string() << '\n';
  res.text << "radical " << rad.n() << '\n';
  json factors = json::array();
  for (const auto& f : m.factors()) factors.push_back({f.prime, f.exponent});
  res.payload = {{"n", o.factor_n}, {"factors", factors}, {"radical", rad.n()},
                 {"r", m.r()}};
}

void cmd_construct(const Options& o, Outcome& res) {
  const auto c = construct_cycle(o.construct_r);
  const auto text = serialize_cycle_file(c);
  if (!o.construct_out.empty()) {
    std::ofstream f(o.construct_out, std::ios::binary);
    if (!f) throw DomainError("cannot write '" + o.construct_out + "'");
    f << text;
    res.text << "wrote " << c.k() << "-row cycle to " << o.construct_out << '\n';
  } else {
    res.text << text;
  }
  res.payload = cycle_json(c);
}

CycleArray load_cycle(const Options& o) {
  return parse_cycle_file(read_file(o.file));
}

void cmd_verify(const Options& o, Outcome& res) {
  auto c = load_cycle(o);
  if (o.verify_modulus) c = c.with_governor(factorize(o.verify_modulus));
  const auto report = verify_induced_cycle(c);
  json violations = json::array();
  for (const auto& v : report.violations) {
    violations.push_back({{"i", v.i}, {"j", v.j}, {"kind", to_string(v.kind)}});
  }
  res.payload = {{"ok", report.ok}, {"k", c.k()}, {"r", c.r()},
                 {"violations", violations}};
  if (report.ok) {
    res.text << "OK: induced " << c.k() << "-cycle\n";
  } else {
    res.text << "FAIL: " << report.summary() << '\n';
    res.exit_code = kCheckFailed;
  }
}

void cmd_search(const Options& o, Outcome& res, std::ostream& err) {
  std::vector<std::uint64_t> caps;
  if (!o.alphabet.empty()) {
    caps = parse_list(o.alphabet);
    if (caps.size() != o.search_r) {
      throw DomainError("--alphabet must list exactly r caps");
    }
  } else {
    caps.assign(o.search_r, o.cap);
  }
  auto cfg = SearchConfig::per_column(caps);
  cfg.budget = std::chrono::duration<double>(o.budget);
  cfg.workers = std::max<std::size_t>(o.jobs, 1);
  cfg.theory_cap = !o.no_theory_cap;
  cfg.allow_repeated_rows = o.repeat_rows;
  if (o.progress) {
    cfg.progress = [&err](const SearchProgress& p) {
      err << "nodes " << p.nodes_expanded << " depth " << p.depth
          << " incumbent " << p.incumbent << '\n';
    };
  }
  if (o.warm_start && o.search_r >= 2) {
    auto seed = construct_cycle(o.search_r);
    const auto alpha = alphabet(seed);
    bool fits = true;
    for (std::size_t j = 0; j < o.search_r; ++j) {
      fits = fits && alpha.count(j) <= std::min<std::uint64_t>(caps[j], 3);
    }
    if (fits) cfg.incumbent = std::move(seed);
  }

  if (o.enumerate) {
    cfg.mode = SearchMode::kEnumerate;
    cfg.target = o.enumerate;
    json cycles = json::array();
    std::uint64_t index = 0;
    const auto summary = enumerate_canonical_cycles(cfg, [&](const CycleArray& c) {
      res.text << "# cycle " << index++ << '\n' << serialize_cycle_file(c) << '\n';
      cycles.push_back(rows_json(c));
      return true;
    });
    res.text << "count " << summary.count << '\n';
    if (summary.truncated) res.text << "# truncated\n";
    res.exhaustive = !summary.truncated;
    res.exit_code = summary.truncated ? kBudgetExhausted : kSuccess;
    res.payload = {{"length", o.enumerate}, {"count", summary.count},
                   {"truncated", summary.truncated}, {"cycles", cycles},
                   {"nodes_expanded", summary.nodes_expanded}};
    return;
  }

  if (o.decide) {
    cfg.mode = SearchMode::kDecide;
    cfg.target = o.decide;
  }
  const auto result = search_longest(cfg);
  res.exhaustive = result.exhaustive;
  res.payload = {{"best_length", result.best_length},
                 {"exhaustive", result.exhaustive},
                 {"stopped_at_bound", result.stopped_at_bound},
                 {"nodes_expanded", result.nodes_expanded},
                 {"witness", result.witness ? cycle_json(*result.witness) : json()}};
  if (o.decide) {
    res.payload["decide"] = o.decide;
    res.payload["found"] = result.best_length == o.decide;
    if (result.best_length == o.decide) {
      res.text << "length " << o.decide << ": found\n";
    } else {
      res.text << "length " << o.decide << ": none"
               << (result.exhaustive ? " (exhaustive)" : " (non-exhaustive)")
               << '\n';
    }
  } else if (result.exhaustive) {
    res.text << "m=" << result.best_length << " (exhaustive)\n";
    if (result.stopped_at_bound) res.text << "# incumbent meets the upper bound\n";
  } else {
    res.text << "m>=" << result.best_length
             << " (non-exhaustive: budget exhausted)\n";
  }
  if (result.witness) res.text << serialize_cycle_file(*result.witness);
  if (!result.exhaustive) res.exit_code = kBudgetExhausted;
}

void cmd_certify(const Options& o, Outcome& res) {
  const auto c = load_cycle(o);
  const auto report = verify_induced_cycle(c);
  if (!report.ok) {
    res.text << "FAIL: not an induced cycle: " << report.summary() << '\n';
    res.payload = {{"certified", false}, {"reason", report.summary()}};
    res.exit_code = kCheckFailed;
    return;
  }
  const auto pairs = build_set_pairs(c);
  try {
    const auto cert = rank_certificate(pairs, o.seed);
    res.text << cert.to_text();
    json pairing = json::array();
    for (const auto& row : cert.pairing) {
      json r = json::array();
      for (const auto& v : row) r.push_back(v.str());
      pairing.push_back(r);
    }
    json vectors = json::array();
    for (const auto& col : cert.vectors) {
      json cj = json::array();
      for (const auto& [residue, z] : col) cj.push_back({residue, z[0], z[1]});
      vectors.push_back(cj);
    }
    res.payload = {{"h", cert.h},
                   {"r", cert.r},
                   {"seed", cert.seed},
                   {"vectors", vectors},
                   {"pairing", pairing},
                   {"triangular", cert.pairing_triangular},
                   {"tensor_rank", cert.tensor_rank},
                   {"certified", cert.certified}};
    if (!cert.certified) res.exit_code = kCheckFailed;
  } catch (const CertificationUnavailable& e) {
    res.text << "UNAVAILABLE: " << e.what() << '\n';
    res.payload = {{"certified", false}, {"reason", e.what()}};
    res.exit_code = kCheckFailed;
  }
}

void cmd_bound(const Options& o, Outcome& res) {
  const auto b = theoretical_bounds(
      o.bound_r, o.bound_cap ? std::optional<std::uint64_t>(o.bound_cap)
                             : std::nullopt);
  res.text << "upper " << b.upper << '\n';
  res.payload = {{"r", o.bound_r}, {"upper", b.upper}};
  if (b.residue_bound) {
    res.text << "residue_bound " << *b.residue_bound << '\n';
    res.payload["residue_bound"] = b.residue_bound->str();
  }
}

void cmd_gaussian(const Options& o, Outcome& res) {
  const auto z = parse_gaussian(o.gaussian);
  const auto gm = gaussian_factorize(z.re, z.im);
  res.payload = {{"modulus", to_string(gm.modulus)}, {"norm", gm.norm}};
  if (o.g_factor) {
    res.text << "modulus " << to_string(gm.modulus) << " norm " << gm.norm
             << " r " << gm.r() << '\n';
    json factors = json::array();
    for (const auto& f : gm.factors) {
      const char* kind = f.kind == PrimeKind::kSplit      ? "split"
                         : f.kind == PrimeKind::kInert    ? "inert"
                                                          : "ramified";
      res.text << "factor " << to_string(f.prime) << " exponent " << f.exponent
               << ' ' << kind << " k " << f.residue_field_size << '\n';
      factors.push_back({{"prime", to_string(f.prime)},
                         {"exponent", f.exponent},
                         {"kind", kind},
                         {"k", f.residue_field_size}});
    }
    res.payload["factors"] = factors;
  } else if (o.g_longest) {
    const auto len = gaussian_longest(gm);
    res.text << "M = " << len.value << " (" << to_string(len.tag) << ")\n";
    res.payload["longest"] = len.value;
    res.payload["case"] = to_string(len.tag);
  } else {
    const auto comma = o.g_rep.find(',');
    std::int64_t c = 0, d = 0;
    try {
      if (comma == std::string::npos) throw std::invalid_argument("");
      std::size_t u1 = 0, u2 = 0;
      const auto s1 = o.g_rep.substr(0, comma), s2 = o.g_rep.substr(comma + 1);
      c = std::stoll(s1, &u1);
      d = std::stoll(s2, &u2);
      if (u1 != s1.size() || u2 != s2.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw DomainError("--rep takes two integers c,d");
    }
    Gaussian x{c, d};
    const auto rep = gaussian_partition_rep(x, gm);
    res.text << rep.to_string() << '\n';
    res.payload["rep"] = rep.terms();
  }
}

void cmd_lift(const Options& o, Outcome& res) {
  const auto c = load_cycle(o);
  const auto report = verify_induced_cycle(c);
  if (!report.ok) {
    res.text << "FAIL: not an induced cycle: " << report.summary() << '\n';
    res.exit_code = kCheckFailed;
    return;
  }
  const auto lifted = lift_cycle(c);
  res.text << serialize_cycle_file(lifted);
  res.payload = cycle_json(lifted);
}

}  // namespace

json RunReport::to_json() const {
  return {{"command", command},         {"inputs_digest", inputs_digest},
          {"result", payload},          {"exhaustive", exhaustive},
          {"seconds", seconds},         {"exit_code", exit_code}};
}

RunReport run(const std::vector<std::string>& args, std::ostream& out,
              std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  for (std::size_t i = 0; i < args.size(); ++i) {
    report.command += (i ? " " : "") + args[i];
  }

  Options o;
  CLI::App app{"Longest induced cycles in unitary Cayley graphs", "ucg"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json, "Print a structured JSON report");
  app.add_option("--seed", o.seed, "Seed for randomized steps (default 0)");

  auto* factor = app.add_subcommand("factor", "Factor n and report its radical");
  factor->add_option("n", o.factor_n)->required();

  auto* construct = app.add_subcommand("construct", "Build the (2^r+2)-cycle");
  construct->add_option("-r", o.construct_r)->required();
  construct->add_option("--out", o.construct_out);

  auto* verify = app.add_subcommand("verify", "Check a cycle file");
  verify->add_option("file", o.file)->required();
  verify->add_option("--modulus", o.verify_modulus);

  auto* search = app.add_subcommand("search", "Exhaustive longest-cycle search");
  search->add_option("-r", o.search_r)->required();
  auto* alpha = search->add_option("--alphabet", o.alphabet, "Per-column caps k1,...,kr");
  auto* cap = search->add_option("--cap", o.cap, "Global residue cap a");
  alpha->excludes(cap);
  search->add_option("--budget", o.budget, "Wall-clock budget in seconds");
  search->add_option("--jobs", o.jobs, "Worker threads");
  auto* enumerate = search->add_option("--enumerate", o.enumerate, "List canonical cycles of length L");
  auto* decide = search->add_option("--decide", o.decide, "Decide whether a cycle of length L exists");
  enumerate->excludes(decide);
  search->add_flag("--no-theory-cap", o.no_theory_cap,
                   "Do not stop at 2^r + 2; rely on the residue-count bound only");
  search->add_flag("--repeat-rows", o.repeat_rows,
                   "Allow repeated rows (non-square-free moduli)");
  search->add_flag("--warm-start", o.warm_start,
                   "Seed the incumbent with the Gray-code construction");
  search->add_flag("--progress", o.progress, "Report progress on stderr");

  auto* certify = app.add_subcommand("certify", "Certify k - 2 <= 2^r by exact rank");
  certify->add_option("file", o.file)->required();

  auto* bound = app.add_subcommand("bound", "Upper bounds on the cycle length");
  bound->add_option("-r", o.bound_r)->required();
  bound->add_option("--cap", o.bound_cap);

  auto* gaussian = app.add_subcommand("gaussian", "Gaussian-integer moduli a+bi");
  gaussian->add_option("modulus", o.gaussian)->required();
  auto* gf = gaussian->add_flag("--factor", o.g_factor);
  auto* gl = gaussian->add_flag("--longest", o.g_longest);
  auto* gr = gaussian->add_option("--rep", o.g_rep, "Partition labels of c+di");
  gf->excludes(gl)->excludes(gr);
  gl->excludes(gr);

  auto* lift = app.add_subcommand("lift", "Add a column to an induced cycle");
  lift->add_option("file", o.file)->required();

  auto finish = [&](Outcome& res) {
    report.payload = std::move(res.payload);
    report.exhaustive = res.exhaustive;
    report.exit_code = res.exit_code;
    report.seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    if (o.json) {
      out << report.to_json().dump(2) << '\n';
    } else {
      out << res.text.str();
    }
    return report;
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    report.exit_code = kSuccess;
    return report;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    report.exit_code = kUsage;
    return report;
  }

  Outcome res;
  try {
    Fnv1a digest;
    for (const auto& a : args) digest.add(a);
    if (!o.file.empty()) digest.add(read_file(o.file));
    report.inputs_digest = digest.hex();

    if (*factor) cmd_factor(o, res);
    else if (*construct) cmd_construct(o, res);
    else if (*verify) cmd_verify(o, res);
    else if (*search) {
      if (o.alphabet.empty() && o.cap == 0) {
        throw DomainError("search needs --alphabet or --cap");
      }
      cmd_search(o, res, err);
    } else if (*certify) cmd_certify(o, res);
    else if (*bound) cmd_bound(o, res);
    else if (*gaussian) {
      if (int(o.g_factor) + int(o.g_longest) + int(!o.g_rep.empty()) != 1) {
        throw DomainError("gaussian needs one of --factor, --longest, --rep");
      }
      cmd_gaussian(o, res);
    } else if (*lift) cmd_lift(o, res);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    report.exit_code = kUsage;
    return report;
  }
  return finish(res);
}

}  // namespace ucg::cli
