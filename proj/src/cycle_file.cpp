#include "ucg/cycle_file.hpp"

#include <charconv>
#include <sstream>
#include <vector>

namespace ucg {

namespace {

struct Field {
  std::string_view text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;  // 1-based
  std::vector<Field> fields;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const auto eol = text.find('\n');
    std::string_view raw = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
      const std::size_t begin = i;
      while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t' && raw[i] != '\r') ++i;
      if (i > begin) line.fields.push_back({raw.substr(begin, i - begin), begin + 1});
    }
    if (!line.fields.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

std::uint64_t to_uint(const Field& f, std::size_t line) {
  std::uint64_t value = 0;
  const auto* end = f.text.data() + f.text.size();
  auto [ptr, ec] = std::from_chars(f.text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(line, f.column,
                     "expected a non-negative integer, got '" +
                         std::string(f.text) + "'");
  }
  return value;
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column,
                       const std::string& what)
    : DomainError("line " + std::to_string(line) + ", column " +
                  std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

CycleArray parse_cycle_file(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, 1, "missing header '<r> <k>'");
  const auto& header = lines.front();
  if (header.fields.size() != 2) {
    throw ParseError(header.number, 1, "header must be '<r> <k>'");
  }
  const auto r = to_uint(header.fields[0], header.number);
  const auto k = to_uint(header.fields[1], header.number);
  if (r < 1) throw ParseError(header.number, header.fields[0].column, "r must be >= 1");
  if (k < 3) throw ParseError(header.number, header.fields[1].column, "k must be >= 3");

  std::size_t next = 1;
  Governor gov;
  if (next < lines.size()) {
    const auto& line = lines[next];
    const auto keyword = line.fields.front().text;
    if (keyword == "modulus" || keyword == "signature") {
      if (line.fields.size() != 2) {
        throw ParseError(line.number, line.fields.front().column,
                         std::string(keyword) + " takes one value");
      }
      try {
        if (keyword == "modulus") {
          gov = factorize(to_uint(line.fields[1], line.number));
        } else {
          std::vector<std::uint64_t> parts;
          std::string_view rest = line.fields[1].text;
          std::size_t col = line.fields[1].column;
          while (true) {
            const auto comma = rest.find(',');
            Field part{rest.substr(0, comma), col};
            parts.push_back(part.text == "inf" ? PartitionSignature::kInfinite
                                               : to_uint(part, line.number));
            if (comma == std::string_view::npos) break;
            col += comma + 1;
            rest = rest.substr(comma + 1);
          }
          gov = PartitionSignature(std::move(parts));
        }
      } catch (const ParseError&) {
        throw;
      } catch (const DomainError& e) {
        throw ParseError(line.number, line.fields[1].column, e.what());
      }
      ++next;
    }
  }

  std::vector<ResidueString> rows;
  for (; next < lines.size(); ++next) {
    const auto& line = lines[next];
    if (rows.size() == k) {
      throw ParseError(line.number, 1,
                       "more than " + std::to_string(k) + " rows");
    }
    if (line.fields.size() != r) {
      throw ParseError(line.number, 1,
                       "expected " + std::to_string(r) + " terms, got " +
                           std::to_string(line.fields.size()));
    }
    std::vector<Residue> terms;
    for (const auto& f : line.fields) terms.push_back(to_uint(f, line.number));
    rows.emplace_back(std::move(terms));
  }
  if (rows.size() != k) {
    const std::size_t where = lines.back().number + 1;
    throw ParseError(where, 1,
                     "expected " + std::to_string(k) + " rows, got " +
                         std::to_string(rows.size()));
  }
  return CycleArray(std::move(rows), std::move(gov));
}

std::string serialize_cycle_file(const CycleArray& c) {
  std::ostringstream os;
  os << c.r() << ' ' << c.k() << '\n';
  if (const auto* m = std::get_if<Modulus>(&c.governor())) {
    os << "modulus " << m->n() << '\n';
  } else if (const auto* s = std::get_if<PartitionSignature>(&c.governor())) {
    os << "signature ";
    for (std::size_t i = 0; i < s->r(); ++i) {
      if (i) os << ',';
      if (s->infinite(i)) {
        os << "inf";
      } else {
        os << s->parts()[i];
      }
    }
    os << '\n';
  }
  for (const auto& row : c.rows()) os << row.to_string() << '\n';
  return os.str();
}

}  // namespace ucg
