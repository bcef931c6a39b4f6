#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "etgen/monomial.hpp"

namespace etgen {

/// Malformed document input. Line and column are 1-based; 0 means unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line = 0, std::size_t column = 0);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct Token {
  std::string_view text;
  /// 1-based column of the first character.
  std::size_t column = 0;
};

/// Whitespace-separated tokens of one line; '#' starts a comment.
std::vector<Token> tokenize(std::string_view line);

/// Parses `1` or a '*'-separated product of `name` / `name^e` factors.
/// Repeated factors multiply. Throws ParseError with the given position.
Monomial parse_monomial(std::string_view text, std::span<const std::string> variables, std::size_t line = 0,
                        std::size_t column = 0);

/// Canonical text: `1`, or factors in variable order with `^e` omitted for e = 1.
std::string format_monomial(const Monomial& m, std::span<const std::string> variables);

/// Variable names must be identifiers and pairwise distinct.
void validate_variable_names(std::span<const std::string> variables);

/// Splits a document into lines (without terminators).
std::vector<std::string_view> split_lines(std::string_view document);

}  // namespace etgen
