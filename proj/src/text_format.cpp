#include "etgen/text_format.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <unordered_set>

namespace etgen {

namespace {

std::string where(std::size_t line, std::size_t column) {
  if (line == 0) return "";
  return "line " + std::to_string(line) + (column ? ", column " + std::to_string(column) : "") + ": ";
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(where(line, column) + message), line_(line), column_(column) {}

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    if (line[i] == '#') break;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '#') ++j;
    tokens.push_back({line.substr(i, j - i), i + 1});
    i = j;
  }
  return tokens;
}

Monomial parse_monomial(std::string_view text, std::span<const std::string> variables, std::size_t line,
                        std::size_t column) {
  if (variables.empty()) throw ParseError("no variables declared", line, column);
  std::vector<int> exps(variables.size(), 0);
  if (text == "1") return Monomial::from_exponents(exps);
  if (text.empty()) throw ParseError("empty monomial", line, column);

  std::size_t pos = 0;
  while (true) {
    const std::size_t end = std::min(text.find('*', pos), text.size());
    const std::string_view factor = text.substr(pos, end - pos);
    const std::size_t factor_col = column ? column + pos : 0;
    const std::size_t caret = factor.find('^');
    const std::string_view name = factor.substr(0, caret);
    auto it = std::find(variables.begin(), variables.end(), name);
    if (it == variables.end()) {
      throw ParseError("unknown variable '" + std::string(name) + "'", line, factor_col);
    }
    int e = 1;
    if (caret != std::string_view::npos) {
      const std::string_view digits = factor.substr(caret + 1);
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), e);
      if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size()) {
        throw ParseError("bad exponent '" + std::string(digits) + "'", line, factor_col + caret + 1);
      }
    }
    auto& slot = exps[static_cast<std::size_t>(it - variables.begin())];
    slot += e;
    if (slot >= kExponentLimit || slot <= -kExponentLimit) throw ParseError("exponent out of range", line, factor_col);
    if (end == text.size()) break;
    pos = end + 1;
  }
  return Monomial::from_exponents(exps);
}

std::string format_monomial(const Monomial& m, std::span<const std::string> variables) {
  if (variables.size() != m.arity()) throw std::invalid_argument("format_monomial: arity mismatch");
  std::string out;
  for (std::size_t i = 0; i < m.arity(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += variables[i];
    if (m[i] != 1) out += '^' + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

void validate_variable_names(std::span<const std::string> variables) {
  if (variables.empty()) throw ParseError("at least one variable is required");
  if (variables.size() > kMaxVariables) throw ParseError("too many variables");
  std::unordered_set<std::string> seen;
  for (const auto& v : variables) {
    if (!is_identifier(v)) throw ParseError("invalid variable name '" + v + "'");
    if (!seen.insert(v).second) throw ParseError("duplicate variable name '" + v + "'");
  }
}

std::vector<std::string_view> split_lines(std::string_view document) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < document.size()) {
    std::size_t end = document.find('\n', pos);
    if (end == std::string_view::npos) end = document.size();
    std::string_view line = document.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = end + 1;
  }
  return lines;
}

}  // namespace etgen
