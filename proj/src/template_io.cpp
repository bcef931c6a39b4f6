#include "etgen/template_io.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "etgen/text_format.hpp"

namespace etgen {

namespace {

constexpr std::string_view kHeader = "etgen-template 1";

void write_monomials(std::ostringstream& out, const MonomialSet& set, const std::vector<std::string>& vars) {
  out << ':';
  for (const auto& m : set) out << ' ' << format_monomial(m, vars);
  out << '\n';
}

template <class Int>
Int parse_int(const Token& tok, std::size_t line) {
  Int value{};
  auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
  if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size()) {
    throw ParseError("expected an integer, got '" + std::string(tok.text) + "'", line, tok.column);
  }
  return value;
}

/// Reads the document line by line, skipping blanks and comments.
class LineReader {
 public:
  explicit LineReader(std::string_view doc) : lines_(split_lines(doc)) {}

  bool next() {
    while (index_ < lines_.size()) {
      tokens_ = tokenize(lines_[index_++]);
      if (!tokens_.empty()) return true;
    }
    tokens_.clear();
    return false;
  }
  const std::vector<Token>& tokens() const { return tokens_; }
  std::size_t line() const { return index_; }

  void expect(std::string_view keyword) {
    if (!next()) throw ParseError("unexpected end of document, expected '" + std::string(keyword) + "'", line());
    if (tokens_[0].text != keyword) {
      throw ParseError("expected '" + std::string(keyword) + "', got '" + std::string(tokens_[0].text) + "'", line(),
                       tokens_[0].column);
    }
  }
  void expect_count(std::size_t n) const {
    if (tokens_.size() != n) {
      throw ParseError("expected " + std::to_string(n) + " fields, got " + std::to_string(tokens_.size()), line());
    }
  }

 private:
  std::vector<std::string_view> lines_;
  std::size_t index_ = 0;
  std::vector<Token> tokens_;
};

/// Parses "<keyword> [index] : m1 m2 ...".
MonomialSet read_monomial_list(LineReader& in, std::string_view keyword, const std::vector<std::string>& vars,
                               std::optional<std::size_t> index) {
  in.expect(keyword);
  const auto& tok = in.tokens();
  std::size_t at = 1;
  if (index) {
    if (tok.size() < 2 || parse_int<std::size_t>(tok[1], in.line()) != *index) {
      throw ParseError("expected index " + std::to_string(*index), in.line(), tok.size() > 1 ? tok[1].column : 0);
    }
    at = 2;
  }
  if (tok.size() <= at || tok[at].text != ":") throw ParseError("expected ':'", in.line());
  std::vector<Monomial> ms;
  for (std::size_t i = at + 1; i < tok.size(); ++i) ms.push_back(parse_monomial(tok[i].text, vars, in.line(), tok[i].column));
  MonomialSet set(ms);
  if (set.size() != ms.size()) throw ParseError("repeated monomial in list", in.line());
  return set;
}

}  // namespace

std::string serialize_template(const Template& t) {
  const auto& vars = t.variables;
  std::ostringstream out;
  out << kHeader << '\n';
  out << "prime " << t.prime << '\n';
  out << "variables";
  for (const auto& v : vars) out << ' ' << v;
  out << '\n';
  out << "action " << format_monomial(t.action, vars) << '\n';
  out << "polynomials " << t.structure.size() << '\n';
  for (std::size_t j = 0; j < t.structure.size(); ++j) {
    out << "structure " << j << ' ';
    write_monomials(out, t.structure[j], vars);
  }
  for (std::size_t j = 0; j < t.shifts.size(); ++j) {
    out << "shifts " << j << ' ';
    write_monomials(out, t.shifts[j], vars);
  }
  out << "E ";
  write_monomials(out, t.partition.excessive, vars);
  out << "R ";
  write_monomials(out, t.partition.reducible, vars);
  out << "B ";
  write_monomials(out, t.partition.basis, vars);
  out << "rows " << t.rows.size() << '\n';
  for (const auto& r : t.rows) out << "row " << r.poly << ' ' << format_monomial(r.shift, vars) << '\n';
  for (std::size_t i = 0; i < t.c2_pairs.size(); ++i)
    out << "c2 " << i << ' ' << t.c2_pairs[i].q << ' ' << t.c2_pairs[i].r << '\n';
  const auto& block = t.reduced_block;
  out << "block " << block.rows() << ' ' << block.cols() << '\n';
  for (ExactMatrix::Index i = 0; i < block.rows(); ++i) {
    for (ExactMatrix::Index j = 0; j < block.cols(); ++j) out << (j ? " " : "") << block(i, j);
    out << '\n';
  }
  out << "end\n";
  return out.str();
}

Template deserialize_template(std::string_view document) {
  LineReader in(document);
  if (!in.next() || in.tokens().size() != 2 || in.tokens()[0].text != "etgen-template") {
    throw ParseError("missing 'etgen-template' header", in.line());
  }
  if (in.tokens()[1].text != "1") throw ParseError("unsupported template version", in.line(), in.tokens()[1].column);

  Template t;
  in.expect("prime");
  in.expect_count(2);
  t.prime = parse_int<std::uint32_t>(in.tokens()[1], in.line());
  if (!is_prime(t.prime) || t.prime < 3 || t.prime >= (1u << 31)) throw ParseError("modulus is not a supported prime", in.line());

  in.expect("variables");
  for (std::size_t i = 1; i < in.tokens().size(); ++i) t.variables.emplace_back(in.tokens()[i].text);
  try {
    validate_variable_names(t.variables);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), in.line());
  }

  in.expect("action");
  in.expect_count(2);
  t.action = parse_monomial(in.tokens()[1].text, t.variables, in.line(), in.tokens()[1].column);
  if (t.action.is_unit()) throw ParseError("action monomial must not be constant", in.line());

  in.expect("polynomials");
  in.expect_count(2);
  const auto polys = parse_int<std::size_t>(in.tokens()[1], in.line());
  if (polys == 0) throw ParseError("template needs at least one polynomial", in.line());
  for (std::size_t j = 0; j < polys; ++j) t.structure.push_back(read_monomial_list(in, "structure", t.variables, j));
  for (std::size_t j = 0; j < polys; ++j) t.shifts.push_back(read_monomial_list(in, "shifts", t.variables, j));
  t.partition.excessive = read_monomial_list(in, "E", t.variables, std::nullopt);
  t.partition.reducible = read_monomial_list(in, "R", t.variables, std::nullopt);
  t.partition.basis = read_monomial_list(in, "B", t.variables, std::nullopt);
  if (t.partition.basis.empty()) throw ParseError("empty basis", in.line());

  in.expect("rows");
  in.expect_count(2);
  const auto nrows = parse_int<std::size_t>(in.tokens()[1], in.line());
  for (std::size_t i = 0; i < nrows; ++i) {
    in.expect("row");
    in.expect_count(3);
    RowSource r;
    r.poly = parse_int<std::size_t>(in.tokens()[1], in.line());
    if (r.poly >= polys) throw ParseError("row refers to a missing polynomial", in.line(), in.tokens()[1].column);
    r.shift = parse_monomial(in.tokens()[2].text, t.variables, in.line(), in.tokens()[2].column);
    t.rows.push_back(r);
  }
  for (std::size_t i = 0; i < t.variables.size(); ++i) {
    in.expect("c2");
    in.expect_count(4);
    if (parse_int<std::size_t>(in.tokens()[1], in.line()) != i) throw ParseError("c2 pairs out of order", in.line());
    C2Pair c{parse_int<std::size_t>(in.tokens()[2], in.line()), parse_int<std::size_t>(in.tokens()[3], in.line())};
    const auto& b = t.partition.basis;
    if (c.q >= b.size() || c.r >= b.size() || b[c.q] != Monomial::variable(t.variables.size(), i) * b[c.r]) {
      throw ParseError("c2 pair does not match the basis", in.line());
    }
    t.c2_pairs.push_back(c);
  }

  in.expect("block");
  in.expect_count(3);
  const auto br = parse_int<ExactMatrix::Index>(in.tokens()[1], in.line());
  const auto bc = parse_int<ExactMatrix::Index>(in.tokens()[2], in.line());
  if (br != static_cast<ExactMatrix::Index>(t.partition.reducible.size()) ||
      bc != static_cast<ExactMatrix::Index>(t.partition.basis.size())) {
    throw ParseError("block shape does not match #R x #B", in.line());
  }
  t.reduced_block = ExactMatrix(PrimeField(t.prime), br, bc);
  for (ExactMatrix::Index i = 0; i < br; ++i) {
    if (!in.next()) throw ParseError("unexpected end of block", in.line());
    in.expect_count(static_cast<std::size_t>(bc));
    for (ExactMatrix::Index j = 0; j < bc; ++j) {
      const auto v = parse_int<std::uint32_t>(in.tokens()[static_cast<std::size_t>(j)], in.line());
      if (v >= t.prime) throw ParseError("block entry not reduced mod p", in.line());
      t.reduced_block.data()(i, j) = v;
    }
  }
  in.expect("end");
  in.expect_count(1);
  if (in.next()) throw ParseError("trailing content after 'end'", in.line());
  return t;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << contents;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void save_template(const std::filesystem::path& path, const Template& t) { write_file(path, serialize_template(t)); }

Template load_template(const std::filesystem::path& path) { return deserialize_template(read_file(path)); }

}  // namespace etgen
