#pragma once

// Text format for cycle arrays:
//
//   # comments run to end of line; blank lines are ignored
//   <r> <k>
//   modulus <n>            (optional)  or  signature <k1>,<k2>,...|inf
//   <k rows of r non-negative integers>

#include <cstddef>
#include <string>
#include <string_view>

#include "ucg/core_model.hpp"

namespace ucg {

class ParseError : public DomainError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

CycleArray parse_cycle_file(std::string_view text);

/// Canonical text: header, optional governor line, one row per line with
/// single spaces, trailing newline.
std::string serialize_cycle_file(const CycleArray& c);

}  // namespace ucg
