// Copyright 2026 The fairprov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fairprov/queryengine.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

namespace fairprov {

// ---------------------------------------------------------------------------
// Decimal
// ---------------------------------------------------------------------------

namespace {

std::string int128_to_string(__int128 v) {
  if (v == 0) return "0";
  bool negative = v < 0;
  unsigned __int128 u = negative ? -static_cast<unsigned __int128>(v) : v;
  std::string digits;
  while (u > 0) {
    digits += static_cast<char>('0' + static_cast<int>(u % 10));
    u /= 10;
  }
  if (negative) digits += '-';
  std::reverse(digits.begin(), digits.end());
  return digits;
}

__int128 pow10_128(int exponent) {
  __int128 out = 1;
  for (int i = 0; i < exponent; ++i) out *= 10;
  return out;
}

}  // namespace

Decimal Decimal::make(__int128 mantissa, int exponent) {
  Decimal d;
  if (mantissa == 0) {
    d.mantissa_ = 0;
    d.exponent_ = 0;
    return d;
  }
  while (mantissa % 10 == 0) {
    mantissa /= 10;
    ++exponent;
  }
  d.mantissa_ = mantissa;
  d.exponent_ = exponent;
  return d;
}

Decimal Decimal::parse(std::string_view lexical) {
  std::string_view s = lexical;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  auto dot = s.find('.');
  std::string digits;
  int exponent = 0;
  if (dot == std::string_view::npos) {
    digits = std::string(s);
  } else {
    digits = std::string(s.substr(0, dot)) + std::string(s.substr(dot + 1));
    exponent = -static_cast<int>(s.size() - dot - 1);
  }
  if (digits.empty() || digits.size() > 32)
    throw MalformedInput("bad decimal \"" + std::string(lexical) + "\"");
  __int128 mantissa = 0;
  for (char c : digits) {
    if (c < '0' || c > '9')
      throw MalformedInput("bad decimal \"" + std::string(lexical) + "\"");
    mantissa = mantissa * 10 + (c - '0');
  }
  return make(negative ? -mantissa : mantissa, exponent);
}

Decimal Decimal::from_int(std::int64_t v) { return make(v, 0); }

Decimal Decimal::add(const Decimal& other) const {
  int exponent = std::min(exponent_, other.exponent_);
  __int128 a = mantissa_ * pow10_128(exponent_ - exponent);
  __int128 b = other.mantissa_ * pow10_128(other.exponent_ - exponent);
  return make(a + b, exponent);
}

Decimal Decimal::sub(const Decimal& other) const {
  int exponent = std::min(exponent_, other.exponent_);
  __int128 a = mantissa_ * pow10_128(exponent_ - exponent);
  __int128 b = other.mantissa_ * pow10_128(other.exponent_ - exponent);
  return make(a - b, exponent);
}

Decimal Decimal::mul(const Decimal& other) const {
  return make(mantissa_ * other.mantissa_, exponent_ + other.exponent_);
}

Decimal Decimal::div(const Decimal& other) const {
  if (other.mantissa_ == 0) throw EvaluationError("division by zero");
  if (mantissa_ == 0) return Decimal{};
  bool negative = (mantissa_ < 0) != (other.mantissa_ < 0);
  unsigned __int128 a =
      mantissa_ < 0 ? -static_cast<unsigned __int128>(mantissa_) : mantissa_;
  unsigned __int128 b = other.mantissa_ < 0
                            ? -static_cast<unsigned __int128>(other.mantissa_)
                            : other.mantissa_;
  // scale the numerator so the quotient has exactly 12 significant digits
  unsigned __int128 threshold = b;
  for (int i = 0; i < 11; ++i) threshold *= 10;
  int scale = 0;
  while (a < threshold) {
    a *= 10;
    ++scale;
  }
  unsigned __int128 q = a / b;
  unsigned __int128 r = a % b;
  // round half to even
  if (r * 2 > b || (r * 2 == b && (q % 2) == 1)) ++q;
  __int128 mantissa = static_cast<__int128>(q);
  return make(negative ? -mantissa : mantissa,
              exponent_ - other.exponent_ - scale);
}

int Decimal::compare(const Decimal& other) const {
  Decimal diff = sub(other);
  if (diff.mantissa_ < 0) return -1;
  if (diff.mantissa_ > 0) return 1;
  return 0;
}

std::string Decimal::str() const {
  std::string digits = int128_to_string(mantissa_ < 0 ? -mantissa_ : mantissa_);
  std::string out;
  if (exponent_ >= 0) {
    out = digits + std::string(exponent_, '0') + ".0";
  } else {
    int frac = -exponent_;
    if (static_cast<int>(digits.size()) <= frac)
      digits.insert(0, frac + 1 - digits.size(), '0');
    out = digits.substr(0, digits.size() - frac) + "." +
          digits.substr(digits.size() - frac);
  }
  return (mantissa_ < 0 ? "-" : "") + out;
}

// ---------------------------------------------------------------------------
// Tokenizer
// ---------------------------------------------------------------------------

namespace {

struct Token {
  enum class Kind {
    End,
    IriRef,
    PName,
    Var,
    Integer,
    DecimalNum,
    String,
    Word,
    Punct
  };
  Kind kind = Kind::End;
  std::string text;
  int line = 1;
  int col = 1;
};

bool word_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
bool local_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
         c == '.';
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      Token t = next();
      bool end = t.kind == Token::Kind::End;
      out.push_back(std::move(t));
      if (end) return out;
    }
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw SyntaxError(message + " at line " + std::to_string(line_) +
                      ", column " + std::to_string(col_));
  }

  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_trivia() {
    while (pos_ < text_.size()) {
      char c = peek();
      if (c == '#') {
        while (pos_ < text_.size() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  bool iri_follows() const {
    for (std::size_t i = pos_ + 1; i < text_.size(); ++i) {
      char c = text_[i];
      if (c == '>') return true;
      if (std::isspace(static_cast<unsigned char>(c)) || c == '"') return false;
    }
    return false;
  }

  Token next() {
    skip_trivia();
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= text_.size()) return t;
    char c = peek();

    if (c == '?' || c == '$') {
      if (!word_start(peek(1)) && !std::isdigit(static_cast<unsigned char>(peek(1)))) {
        advance();
        t.kind = Token::Kind::Punct;
        t.text = "?";
        return t;
      }
      advance();
      while (word_char(peek())) t.text += advance();
      t.kind = Token::Kind::Var;
      return t;
    }

    if (c == '<' && iri_follows()) {
      advance();
      while (pos_ < text_.size() && peek() != '>') t.text += advance();
      if (pos_ >= text_.size()) fail("unterminated IRI");
      advance();
      t.kind = Token::Kind::IriRef;
      return t;
    }

    if (c == '"') {
      advance();
      while (pos_ < text_.size() && peek() != '"') {
        char d = advance();
        if (d == '\\') {
          if (pos_ >= text_.size()) fail("unterminated string");
          char e = advance();
          switch (e) {
            case 'n': t.text += '\n'; break;
            case 't': t.text += '\t'; break;
            case '\\': t.text += '\\'; break;
            case '"': t.text += '"'; break;
            default: fail(std::string("unknown escape \\") + e);
          }
        } else {
          t.text += d;
        }
      }
      if (pos_ >= text_.size()) fail("unterminated string");
      advance();
      t.kind = Token::Kind::String;
      return t;
    }

    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      bool decimal = false;
      while (std::isdigit(static_cast<unsigned char>(peek()))) t.text += advance();
      if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
        decimal = true;
        t.text += advance();
        while (std::isdigit(static_cast<unsigned char>(peek()))) t.text += advance();
      }
      t.kind = decimal ? Token::Kind::DecimalNum : Token::Kind::Integer;
      return t;
    }

    if (word_start(c)) {
      while (word_char(peek())) t.text += advance();
      if (peek() == ':') {
        advance();
        t.text += ':';
        while (local_char(peek())) t.text += advance();
        t.kind = Token::Kind::PName;
        return t;
      }
      t.kind = Token::Kind::Word;
      return t;
    }

    if (c == ':') {  // default-prefix name, e.g. ":local"
      advance();
      t.text = ":";
      while (local_char(peek())) t.text += advance();
      t.kind = Token::Kind::PName;
      return t;
    }

    // punctuation, two-character operators first
    if ((c == '<' || c == '>' || c == '!') && peek(1) == '=') {
      t.text += advance();
      t.text += advance();
      t.kind = Token::Kind::Punct;
      return t;
    }
    static constexpr std::string_view kSingle = "(){}.;,/|*=<>+-^!?";
    if (kSingle.find(c) != std::string_view::npos) {
      t.text += advance();
      t.kind = Token::Kind::Punct;
      return t;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(Lexer(text).run()) {}

  QueryAst run() {
    parse_prologue();
    parse_select();
    parse_where();
    parse_trailing();
    validate();
    return std::move(ast_);
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }

  const Token& advance() { return tokens_[std::min(pos_++, tokens_.size() - 1)]; }

  [[noreturn]] void fail(const std::string& message) const {
    const Token& t = peek();
    throw SyntaxError(message + " at line " + std::to_string(t.line) +
                      ", column " + std::to_string(t.col));
  }

  bool is_word(std::string_view keyword, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == Token::Kind::Word && upper(t.text) == keyword;
  }

  bool is_punct(std::string_view p, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == Token::Kind::Punct && t.text == p;
  }

  void expect_punct(std::string_view p) {
    if (!is_punct(p)) fail("expected \"" + std::string(p) + "\"");
    advance();
  }

  void check_unsupported_word() const {
    static const char* kUnsupported[] = {
        "OPTIONAL", "UNION",  "MINUS",    "GRAPH", "SERVICE",
        "VALUES",   "EXISTS", "DESCRIBE", "ASK",   "CONSTRUCT",
        "ORDER",    "LIMIT",  "OFFSET",   "HAVING"};
    if (peek().kind != Token::Kind::Word) return;
    std::string word = upper(peek().text);
    for (const char* u : kUnsupported)
      if (word == u) throw UnsupportedFeature(u);
  }

  Iri expand_pname(const std::string& pname) const {
    return ast_.prefixes.expand(Term::parse(pname));
  }

  void parse_prologue() {
    if (is_word("ASK") || is_word("CONSTRUCT") || is_word("DESCRIBE"))
      throw UnsupportedFeature(upper(peek().text));
    while (is_word("PREFIX")) {
      advance();
      if (peek().kind != Token::Kind::PName) fail("expected prefix name");
      std::string pname = advance().text;
      if (pname.empty() || pname.back() != ':')
        fail("prefix declaration must end with ':'");
      if (peek().kind != Token::Kind::IriRef) fail("expected IRI");
      ast_.prefixes.add(pname.substr(0, pname.size() - 1), Iri(advance().text));
    }
  }

  void parse_select() {
    if (is_word("ASK") || is_word("CONSTRUCT") || is_word("DESCRIBE"))
      throw UnsupportedFeature(upper(peek().text));
    if (!is_word("SELECT")) fail("expected SELECT");
    advance();
    if (is_word("DISTINCT")) throw UnsupportedFeature("SELECT DISTINCT");
    if (is_word("REDUCED")) throw UnsupportedFeature("SELECT REDUCED");
    if (is_punct("*")) throw UnsupportedFeature("SELECT *");

    while (!is_word("WHERE") && !is_punct("{")) {
      if (peek().kind == Token::Kind::End) fail("unterminated SELECT clause");
      if (peek().kind == Token::Kind::Var) {
        ast_.projection.push_back({advance().text, nullptr});
        continue;
      }
      if (is_punct("(")) {
        advance();
        ExprPtr expr = parse_expression(true);
        if (!is_word("AS")) fail("expected AS");
        advance();
        if (peek().kind != Token::Kind::Var) fail("expected variable after AS");
        std::string var = advance().text;
        expect_punct(")");
        ast_.projection.push_back({std::move(var), std::move(expr)});
        continue;
      }
      if (peek().kind == Token::Kind::Word) {
        // bare aggregate-led projection: GROUP_CONCAT(...) AS ?v
        ExprPtr expr = parse_expression(true);
        if (!is_word("AS")) fail("expected AS");
        advance();
        if (peek().kind != Token::Kind::Var) fail("expected variable after AS");
        ast_.projection.push_back({advance().text, std::move(expr)});
        continue;
      }
      fail("unexpected token in SELECT clause");
    }
    if (ast_.projection.empty()) fail("empty projection");
  }

  void parse_where() {
    if (is_word("WHERE")) advance();
    expect_punct("{");
    while (!is_punct("}")) {
      if (peek().kind == Token::Kind::End) fail("unterminated group pattern");
      check_unsupported_word();
      if (is_word("SELECT")) throw UnsupportedFeature("subquery");
      if (is_punct("{")) {
        // distinguish `{ .. } UNION { .. }` from a plain nested group
        std::size_t ahead = 1;
        int depth = 1;
        while (depth > 0 && peek(ahead).kind != Token::Kind::End) {
          if (peek(ahead).kind == Token::Kind::Punct) {
            if (peek(ahead).text == "{") ++depth;
            if (peek(ahead).text == "}") --depth;
          }
          ++ahead;
        }
        if (peek(ahead).kind == Token::Kind::Word &&
            upper(peek(ahead).text) == "UNION")
          throw UnsupportedFeature("UNION");
        throw UnsupportedFeature("nested group pattern");
      }

      if (is_word("FILTER")) {
        advance();
        if (is_word("NOT") || is_word("EXISTS"))
          throw UnsupportedFeature("FILTER EXISTS");
        expect_punct("(");
        WhereElement e;
        e.kind = WhereElement::Kind::Filter;
        e.expr = parse_expression(false);
        expect_punct(")");
        ast_.where.push_back(std::move(e));
      } else if (is_word("BIND")) {
        advance();
        expect_punct("(");
        WhereElement e;
        e.kind = WhereElement::Kind::Bind;
        e.expr = parse_expression(false);
        if (!is_word("AS")) fail("expected AS in BIND");
        advance();
        if (peek().kind != Token::Kind::Var) fail("expected variable after AS");
        e.bind_var = advance().text;
        expect_punct(")");
        ast_.where.push_back(std::move(e));
      } else {
        WhereElement e;
        e.kind = WhereElement::Kind::Pattern;
        e.pattern.subject = parse_term(false);
        e.pattern.path = parse_path();
        e.pattern.object = parse_term(true);
        ast_.where.push_back(std::move(e));
      }
      if (is_punct(".")) advance();
    }
    advance();  // '}'
  }

  PatternTerm parse_term(bool allow_literal) {
    const Token& t = peek();
    switch (t.kind) {
      case Token::Kind::Var:
        return PatternTerm(advance().text);
      case Token::Kind::IriRef:
        return PatternTerm(Value(Iri(advance().text)));
      case Token::Kind::PName:
        return PatternTerm(Value(expand_pname(advance().text)));
      case Token::Kind::Integer:
        if (!allow_literal) break;
        return PatternTerm(
            Value(LiteralValue::make(advance().text, ObjectKind::Integer)));
      case Token::Kind::DecimalNum:
        if (!allow_literal) break;
        return PatternTerm(
            Value(LiteralValue::make(advance().text, ObjectKind::Decimal)));
      case Token::Kind::String:
        if (!allow_literal) break;
        return PatternTerm(Value(LiteralValue::str(advance().text)));
      case Token::Kind::Word:
        if (allow_literal && (upper(t.text) == "TRUE" || upper(t.text) == "FALSE"))
          return PatternTerm(
              Value(LiteralValue::boolean(upper(advance().text) == "TRUE")));
        break;
      default:
        break;
    }
    fail("expected a variable or term");
  }

  PathExpr parse_path() { return parse_path_alternation(); }

  PathExpr parse_path_alternation() {
    PathExpr first = parse_path_sequence();
    if (!is_punct("|")) return first;
    PathExpr alt;
    alt.kind = PathExpr::Kind::Alternation;
    alt.parts.push_back(std::move(first));
    while (is_punct("|")) {
      advance();
      alt.parts.push_back(parse_path_sequence());
    }
    return alt;
  }

  PathExpr parse_path_sequence() {
    PathExpr first = parse_path_element();
    if (!is_punct("/")) return first;
    PathExpr seq;
    seq.kind = PathExpr::Kind::Sequence;
    seq.parts.push_back(std::move(first));
    while (is_punct("/")) {
      advance();
      seq.parts.push_back(parse_path_element());
    }
    return seq;
  }

  PathExpr parse_path_element() {
    if (is_punct("^")) throw UnsupportedFeature("inverse path (^)");
    if (is_punct("!")) throw UnsupportedFeature("negated path (!)");
    PathExpr primary;
    if (peek().kind == Token::Kind::Var) {
      primary.kind = PathExpr::Kind::Variable;
      primary.var = advance().text;
      return primary;
    }
    if (is_punct("(")) {
      advance();
      primary = parse_path_alternation();
      expect_punct(")");
    } else if (peek().kind == Token::Kind::IriRef) {
      primary.kind = PathExpr::Kind::Predicate;
      primary.predicate = Iri(advance().text);
    } else if (peek().kind == Token::Kind::PName) {
      primary.kind = PathExpr::Kind::Predicate;
      primary.predicate = expand_pname(advance().text);
    } else if (peek().kind == Token::Kind::Word && peek().text == "a") {
      advance();
      primary.kind = PathExpr::Kind::Predicate;
      primary.predicate = Vocab::get().rdf_type;
    } else {
      fail("expected a property path");
    }
    for (;;) {
      if (is_punct("*")) {
        advance();
        PathExpr star;
        star.kind = PathExpr::Kind::ZeroOrMore;
        star.parts.push_back(std::move(primary));
        primary = std::move(star);
      } else if (is_punct("+")) {
        throw UnsupportedFeature("one-or-more path (+)");
      } else if (is_punct("?")) {
        throw UnsupportedFeature("zero-or-one path (?)");
      } else {
        return primary;
      }
    }
  }

  ExprPtr parse_expression(bool in_projection) {
    ExprPtr left = parse_additive(in_projection);
    static const char* kCmp[] = {"=", "!=", "<", ">", "<=", ">="};
    for (const char* op : kCmp) {
      if (is_punct(op)) {
        advance();
        auto node = std::make_shared<Expression>();
        node->kind = Expression::Kind::Compare;
        node->op = op;
        node->args = {std::move(left), parse_additive(in_projection)};
        return node;
      }
    }
    return left;
  }

  ExprPtr parse_additive(bool in_projection) {
    ExprPtr left = parse_multiplicative(in_projection);
    while (is_punct("+") || is_punct("-")) {
      std::string op = advance().text;
      auto node = std::make_shared<Expression>();
      node->kind = Expression::Kind::Arith;
      node->op = op;
      node->args = {std::move(left), parse_multiplicative(in_projection)};
      left = std::move(node);
    }
    return left;
  }

  ExprPtr parse_multiplicative(bool in_projection) {
    ExprPtr left = parse_unary(in_projection);
    while (is_punct("*") || is_punct("/")) {
      std::string op = advance().text;
      auto node = std::make_shared<Expression>();
      node->kind = Expression::Kind::Arith;
      node->op = op;
      node->args = {std::move(left), parse_unary(in_projection)};
      left = std::move(node);
    }
    return left;
  }

  ExprPtr parse_unary(bool in_projection) {
    if (is_punct("-")) {
      advance();
      auto node = std::make_shared<Expression>();
      node->kind = Expression::Kind::Negate;
      node->args = {parse_primary(in_projection)};
      return node;
    }
    return parse_primary(in_projection);
  }

  ExprPtr make_literal(Value value) {
    auto node = std::make_shared<Expression>();
    node->kind = Expression::Kind::Literal;
    node->literal = std::move(value);
    return node;
  }

  std::string parse_aggregate_var() {
    expect_punct("(");
    if (is_punct("*")) throw UnsupportedFeature("COUNT(*)");
    if (peek().kind != Token::Kind::Var) fail("expected variable in aggregate");
    std::string var = advance().text;
    return var;
  }

  ExprPtr parse_primary(bool in_projection) {
    const Token& t = peek();
    switch (t.kind) {
      case Token::Kind::Var:
        return [this] {
          auto node = std::make_shared<Expression>();
          node->kind = Expression::Kind::Var;
          node->var = advance().text;
          return node;
        }();
      case Token::Kind::Integer:
        return make_literal(
            Value(LiteralValue::make(advance().text, ObjectKind::Integer)));
      case Token::Kind::DecimalNum:
        return make_literal(
            Value(LiteralValue::make(advance().text, ObjectKind::Decimal)));
      case Token::Kind::String:
        return make_literal(Value(LiteralValue::str(advance().text)));
      case Token::Kind::IriRef:
        return make_literal(Value(Iri(advance().text)));
      case Token::Kind::PName:
        return make_literal(Value(expand_pname(advance().text)));
      case Token::Kind::Punct:
        if (t.text == "(") {
          advance();
          ExprPtr inner = parse_expression(in_projection);
          expect_punct(")");
          return inner;
        }
        break;
      case Token::Kind::Word: {
        std::string word = upper(t.text);
        if (word == "TRUE" || word == "FALSE") {
          advance();
          return make_literal(Value(LiteralValue::boolean(word == "TRUE")));
        }
        if (word == "IF") {
          advance();
          expect_punct("(");
          auto node = std::make_shared<Expression>();
          node->kind = Expression::Kind::If;
          node->args.push_back(parse_expression(in_projection));
          expect_punct(",");
          node->args.push_back(parse_expression(in_projection));
          expect_punct(",");
          node->args.push_back(parse_expression(in_projection));
          expect_punct(")");
          return node;
        }
        if (word == "COUNT" || word == "SUM" || word == "GROUP_CONCAT") {
          if (!in_projection)
            throw SyntaxError("aggregate " + word +
                              " is only allowed in the projection");
          advance();
          auto node = std::make_shared<Expression>();
          if (word == "COUNT") {
            node->kind = Expression::Kind::Count;
            node->var = parse_aggregate_var();
            expect_punct(")");
          } else if (word == "SUM") {
            node->kind = Expression::Kind::Sum;
            node->var = parse_aggregate_var();
            expect_punct(")");
          } else {
            node->kind = Expression::Kind::GroupConcat;
            node->separator = " ";
            expect_punct("(");
            if (is_word("DISTINCT")) {
              advance();
              node->distinct = true;
            }
            if (peek().kind != Token::Kind::Var)
              fail("expected variable in GROUP_CONCAT");
            node->var = advance().text;
            if (is_punct(";")) {
              advance();
              if (!is_word("SEPARATOR")) fail("expected SEPARATOR");
              advance();
              expect_punct("=");
              if (peek().kind != Token::Kind::String)
                fail("expected separator string");
              node->separator = advance().text;
            }
            expect_punct(")");
          }
          return node;
        }
        static const char* kKnownFunctions[] = {
            "AVG",  "MIN",      "MAX",   "SAMPLE", "STR",    "CONCAT",
            "REGEX", "BOUND",   "COALESCE", "ABS", "CEIL",   "FLOOR",
            "ROUND", "SUBSTR",  "STRLEN", "UCASE", "LCASE",  "NOW",
            "YEAR",  "IRI",     "URI",   "BNODE",  "EXISTS", "DATATYPE",
            "LANG"};
        for (const char* f : kKnownFunctions)
          if (word == f) throw UnsupportedFeature(f);
        break;
      }
      default:
        break;
    }
    fail("unexpected token in expression");
  }

  void parse_trailing() {
    for (;;) {
      if (peek().kind == Token::Kind::End) return;
      if (is_word("GROUP")) {
        advance();
        if (!is_word("BY")) fail("expected BY after GROUP");
        advance();
        while (peek().kind == Token::Kind::Var)
          ast_.group_by.push_back(advance().text);
        if (ast_.group_by.empty()) fail("empty GROUP BY");
        continue;
      }
      check_unsupported_word();
      fail("unexpected token after the group pattern");
    }
  }

  static void collect_naked_vars(const ExprPtr& expr,
                                 std::vector<std::string>& out) {
    if (!expr) return;
    switch (expr->kind) {
      case Expression::Kind::Var:
        out.push_back(expr->var);
        break;
      case Expression::Kind::Count:
      case Expression::Kind::Sum:
      case Expression::Kind::GroupConcat:
        return;  // variables under an aggregate are fine
      default:
        break;
    }
    for (const auto& arg : expr->args) collect_naked_vars(arg, out);
  }

  void validate() const {
    bool grouped = !ast_.group_by.empty() || ast_.has_aggregates();
    if (!grouped) return;
    std::set<std::string> keys(ast_.group_by.begin(), ast_.group_by.end());
    for (const auto& projection : ast_.projection) {
      if (!projection.expr) {
        if (!keys.count(projection.var))
          throw SyntaxError("variable ?" + projection.var +
                            " is projected without aggregation in a grouped "
                            "query");
        continue;
      }
      std::vector<std::string> naked;
      collect_naked_vars(projection.expr, naked);
      for (const auto& var : naked)
        if (!keys.count(var))
          throw SyntaxError("variable ?" + var +
                            " is used outside an aggregate in a grouped query");
    }
    std::set<std::string> bound;
    for (const auto& element : ast_.where) {
      if (element.kind != WhereElement::Kind::Bind) continue;
      if (bound.count(element.bind_var))
        throw SyntaxError("BIND target ?" + element.bind_var +
                          " is not fresh");
      bound.insert(element.bind_var);
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  QueryAst ast_;
};

bool expr_has_aggregates(const ExprPtr& expr) {
  if (!expr) return false;
  switch (expr->kind) {
    case Expression::Kind::Count:
    case Expression::Kind::Sum:
    case Expression::Kind::GroupConcat:
      return true;
    default:
      break;
  }
  return std::any_of(expr->args.begin(), expr->args.end(),
                     expr_has_aggregates);
}

}  // namespace

bool QueryAst::has_aggregates() const {
  return std::any_of(projection.begin(), projection.end(),
                     [](const Projection& p) {
                       return expr_has_aggregates(p.expr);
                     });
}

QueryAst parse_query(std::string_view text) { return Parser(text).run(); }

// ---------------------------------------------------------------------------
// FrozenGraph
// ---------------------------------------------------------------------------

FrozenGraph::FrozenGraph(const LinkedDocument& doc) { index(to_triples(doc)); }

FrozenGraph::FrozenGraph(const std::vector<Triple>& triples) { index(triples); }

std::uint32_t FrozenGraph::intern(const Value& value) {
  std::string key = key_string(value);
  auto it = by_key_.find(key);
  if (it != by_key_.end()) return it->second;
  auto id = static_cast<std::uint32_t>(terms_.size());
  terms_.push_back(value);
  by_key_.emplace(std::move(key), id);
  if (is_ref(value)) iris_.push_back(id);
  return id;
}

void FrozenGraph::index(const std::vector<Triple>& triples) {
  for (const auto& t : triples) {
    std::uint32_t s = intern(Value(t.subject));
    std::uint32_t p = intern(Value(t.predicate));
    std::uint32_t o = intern(t.object);
    so_[p].emplace_back(s, o);
    os_[p].emplace_back(o, s);
  }
  for (auto& [p, edges] : so_) {
    std::sort(edges.begin(), edges.end());
    preds_.push_back(p);
  }
  for (auto& [p, edges] : os_) std::sort(edges.begin(), edges.end());
  std::sort(iris_.begin(), iris_.end());
  std::sort(preds_.begin(), preds_.end());
}

std::uint32_t FrozenGraph::term_id(const Value& value) const {
  auto it = by_key_.find(key_string(value));
  return it == by_key_.end() ? kNone : it->second;
}

const FrozenGraph::EdgeList* FrozenGraph::edges_so(std::uint32_t pred) const {
  auto it = so_.find(pred);
  return it == so_.end() ? nullptr : &it->second;
}

const FrozenGraph::EdgeList* FrozenGraph::edges_os(std::uint32_t pred) const {
  auto it = os_.find(pred);
  return it == os_.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------
// Path evaluation
// ---------------------------------------------------------------------------

namespace {

// shared closure cache: star nodes are the expensive part
struct PathCache {
  std::map<std::pair<const PathExpr*, std::uint32_t>,
           std::shared_ptr<const std::vector<std::uint32_t>>>
      closures;
};

const std::vector<std::uint32_t>& closure_of(const FrozenGraph& g,
                                             const PathExpr& path,
                                             std::uint32_t start,
                                             PathCache& cache) {
  auto key = std::make_pair(&path, start);
  auto it = cache.closures.find(key);
  if (it != cache.closures.end()) return *it->second;

  auto result = std::make_shared<std::vector<std::uint32_t>>();
  switch (path.kind) {
    case PathExpr::Kind::Variable:
      throw UnsupportedFeature("variable inside a property path");
    case PathExpr::Kind::Predicate: {
      std::uint32_t pred = g.term_id(Value(path.predicate));
      if (const auto* edges = pred == FrozenGraph::kNone ? nullptr
                                                          : g.edges_so(pred)) {
        auto lo = std::lower_bound(edges->begin(), edges->end(),
                                   std::make_pair(start, 0u));
        for (auto e = lo; e != edges->end() && e->first == start; ++e)
          result->push_back(e->second);
      }
      break;
    }
    case PathExpr::Kind::Alternation: {
      for (const auto& part : path.parts) {
        const auto& sub = closure_of(g, part, start, cache);
        result->insert(result->end(), sub.begin(), sub.end());
      }
      break;
    }
    case PathExpr::Kind::Sequence: {
      std::vector<std::uint32_t> frontier{start};
      for (const auto& part : path.parts) {
        std::vector<std::uint32_t> next;
        for (std::uint32_t node : frontier) {
          if (!g.is_iri(node)) continue;  // literals have no outgoing edges
          const auto& sub = closure_of(g, part, node, cache);
          next.insert(next.end(), sub.begin(), sub.end());
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        frontier = std::move(next);
      }
      *result = std::move(frontier);
      break;
    }
    case PathExpr::Kind::ZeroOrMore: {
      std::vector<std::uint32_t> visited{start};
      std::vector<std::uint32_t> queue{start};
      while (!queue.empty()) {
        std::uint32_t node = queue.back();
        queue.pop_back();
        if (!g.is_iri(node)) continue;
        const auto& sub = closure_of(g, path.parts.front(), node, cache);
        for (std::uint32_t next : sub) {
          auto lo = std::lower_bound(visited.begin(), visited.end(), next);
          if (lo != visited.end() && *lo == next) continue;
          visited.insert(lo, next);
          queue.push_back(next);
        }
      }
      *result = std::move(visited);
      break;
    }
  }
  std::sort(result->begin(), result->end());
  result->erase(std::unique(result->begin(), result->end()), result->end());
  const auto& stored =
      cache.closures.emplace(key, std::move(result)).first->second;
  return *stored;
}

}  // namespace

std::set<Iri> eval_path(const FrozenGraph& graph, const Iri& start,
                        const PathExpr& path) {
  std::set<Iri> out;
  std::uint32_t id = graph.term_id(Value(start));
  if (id == FrozenGraph::kNone) {
    // zero-or-more includes the start even when it is not in the graph
    if (path.kind == PathExpr::Kind::ZeroOrMore) out.insert(start);
    return out;
  }
  PathCache cache;
  for (std::uint32_t node : closure_of(graph, path, id, cache))
    if (graph.is_iri(node)) out.insert(std::get<Iri>(graph.term(node)));
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

constexpr std::uint32_t kUnbound = FrozenGraph::kNone;

struct Num {
  bool is_decimal = false;
  std::int64_t i = 0;
  Decimal d;

  Decimal as_decimal() const { return is_decimal ? d : Decimal::from_int(i); }
};

Num to_num(const Value& value) {
  if (is_ref(value)) throw TypeError("IRI used in arithmetic");
  const auto& lit = std::get<LiteralValue>(value);
  if (lit.datatype == ObjectKind::Integer) {
    std::int64_t v = 0;
    auto [ptr, ec] =
        std::from_chars(lit.lexical.data(),
                        lit.lexical.data() + lit.lexical.size(), v);
    (void)ptr;
    if (ec != std::errc()) throw TypeError("integer out of range");
    return Num{false, v, {}};
  }
  if (lit.datatype == ObjectKind::Decimal)
    return Num{true, 0, Decimal::parse(lit.lexical)};
  throw TypeError("arithmetic on non-numeric literal \"" + lit.lexical + "\"");
}

Value num_to_value(const Num& n) {
  if (n.is_decimal) return Value(LiteralValue::decimal(n.d.str()));
  return Value(LiteralValue::integer(n.i));
}

Num arith(const Num& a, const std::string& op, const Num& b) {
  if (op == "/") return Num{true, 0, a.as_decimal().div(b.as_decimal())};
  if (a.is_decimal || b.is_decimal) {
    Decimal x = a.as_decimal(), y = b.as_decimal();
    if (op == "+") return Num{true, 0, x.add(y)};
    if (op == "-") return Num{true, 0, x.sub(y)};
    return Num{true, 0, x.mul(y)};
  }
  __int128 r;
  if (op == "+") r = static_cast<__int128>(a.i) + b.i;
  else if (op == "-") r = static_cast<__int128>(a.i) - b.i;
  else r = static_cast<__int128>(a.i) * b.i;
  if (r > std::numeric_limits<std::int64_t>::max() ||
      r < std::numeric_limits<std::int64_t>::min()) {
    Decimal x = a.as_decimal(), y = b.as_decimal();
    if (op == "+") return Num{true, 0, x.add(y)};
    if (op == "-") return Num{true, 0, x.sub(y)};
    return Num{true, 0, x.mul(y)};
  }
  return Num{false, static_cast<std::int64_t>(r), {}};
}

bool is_numeric(const Value& value) {
  if (is_ref(value)) return false;
  auto dt = std::get<LiteralValue>(value).datatype;
  return dt == ObjectKind::Integer || dt == ObjectKind::Decimal;
}

// three-way comparison; throws TypeError when the pair is not orderable
int compare_values(const Value& a, const Value& b, bool ordering) {
  if (is_numeric(a) && is_numeric(b))
    return to_num(a).as_decimal().compare(to_num(b).as_decimal());
  if (is_ref(a) && is_ref(b)) {
    if (ordering) throw TypeError("IRIs are not orderable");
    return std::get<Iri>(a) == std::get<Iri>(b) ? 0 : 2;  // 2 = just unequal
  }
  if (!is_ref(a) && !is_ref(b)) {
    const auto& la = std::get<LiteralValue>(a);
    const auto& lb = std::get<LiteralValue>(b);
    if (la.datatype == ObjectKind::Boolean &&
        lb.datatype == ObjectKind::Boolean) {
      if (ordering) throw TypeError("booleans are not orderable");
      return la.lexical == lb.lexical ? 0 : 2;
    }
    if (la.datatype == ObjectKind::String &&
        lb.datatype == ObjectKind::String)
      return la.lexical.compare(lb.lexical) < 0
                 ? -1
                 : (la.lexical == lb.lexical ? 0 : 1);
    if (la.datatype == ObjectKind::DateTime &&
        lb.datatype == ObjectKind::DateTime) {
      std::int64_t ea = parse_instant_utc(la.lexical);
      std::int64_t eb = parse_instant_utc(lb.lexical);
      if (ea != eb) return ea < eb ? -1 : 1;
      return la.lexical.compare(lb.lexical) < 0
                 ? -1
                 : (la.lexical == lb.lexical ? 0 : 1);
    }
  }
  if (ordering) throw TypeError("values of different kinds are not orderable");
  return 2;  // different kinds: unequal
}

class Evaluator {
 public:
  Evaluator(const FrozenGraph& graph, const QueryAst& ast)
      : g_(graph), ast_(ast) {}

  SolutionTable run() {
    register_vars();
    join_patterns();
    apply_binds_and_filters();
    return project();
  }

 private:
  using Row = std::vector<std::uint32_t>;

  int var_index(const std::string& name) {
    auto it = vars_.find(name);
    if (it != vars_.end()) return it->second;
    int index = static_cast<int>(vars_.size());
    vars_.emplace(name, index);
    return index;
  }

  void register_vars() {
    for (const auto& element : ast_.where) {
      if (element.kind == WhereElement::Kind::Pattern) {
        if (std::holds_alternative<std::string>(element.pattern.subject))
          var_index(std::get<std::string>(element.pattern.subject));
        if (element.pattern.path.kind == PathExpr::Kind::Variable)
          var_index(element.pattern.path.var);
        if (std::holds_alternative<std::string>(element.pattern.object))
          var_index(std::get<std::string>(element.pattern.object));
      } else if (element.kind == WhereElement::Kind::Bind) {
        var_index(element.bind_var);
      }
    }
    for (const auto& projection : ast_.projection)
      if (!projection.expr) var_index(projection.var);
    for (const auto& key : ast_.group_by) var_index(key);
  }

  // interned value of a row variable, or the fixed term id
  struct TermRef {
    bool is_var = false;
    int var = -1;
    std::uint32_t fixed = kUnbound;  // kUnbound when the fixed term is absent
  };

  TermRef resolve(const PatternTerm& term) {
    TermRef out;
    if (std::holds_alternative<std::string>(term)) {
      out.is_var = true;
      out.var = var_index(std::get<std::string>(term));
    } else {
      out.fixed = g_.term_id(std::get<Value>(term));
    }
    return out;
  }

  void join_patterns() {
    rows_.assign(1, Row(vars_.size(), kUnbound));

    // join order: prefer patterns sharing an already-bound variable
    std::vector<const TriplePattern*> patterns;
    for (const auto& element : ast_.where)
      if (element.kind == WhereElement::Kind::Pattern)
        patterns.push_back(&element.pattern);

    std::set<int> bound;
    std::vector<bool> used(patterns.size(), false);
    auto pattern_vars = [this](const TriplePattern& p) {
      std::vector<int> out;
      if (std::holds_alternative<std::string>(p.subject))
        out.push_back(var_index(std::get<std::string>(p.subject)));
      if (p.path.kind == PathExpr::Kind::Variable)
        out.push_back(var_index(p.path.var));
      if (std::holds_alternative<std::string>(p.object))
        out.push_back(var_index(std::get<std::string>(p.object)));
      return out;
    };
    for (std::size_t round = 0; round < patterns.size(); ++round) {
      std::size_t pick = patterns.size();
      for (std::size_t i = 0; i < patterns.size(); ++i) {
        if (used[i]) continue;
        auto vars = pattern_vars(*patterns[i]);
        bool shares = std::any_of(vars.begin(), vars.end(), [&bound](int v) {
          return bound.count(v) != 0;
        });
        bool fixed_only = vars.empty();
        if (shares || fixed_only || bound.empty()) {
          pick = i;
          break;
        }
      }
      if (pick == patterns.size()) {
        for (std::size_t i = 0; i < patterns.size(); ++i)
          if (!used[i]) {
            pick = i;  // cross product is unavoidable
            break;
          }
      }
      used[pick] = true;
      for (int v : pattern_vars(*patterns[pick])) bound.insert(v);
      apply_pattern(*patterns[pick]);
      if (rows_.empty()) return;
    }
  }

  void apply_pattern(const TriplePattern& pattern) {
    TermRef subject = resolve(pattern.subject);
    TermRef object = resolve(pattern.object);
    std::vector<Row> next;
    PathCache& cache = cache_;

    if (pattern.path.kind == PathExpr::Kind::Variable) {
      int pvar = vars_.at(pattern.path.var);
      for (const Row& row : rows_) {
        std::uint32_t s = subject.is_var ? row[subject.var] : subject.fixed;
        std::uint32_t o = object.is_var ? row[object.var] : object.fixed;
        bool s_bound = !subject.is_var || s != kUnbound;
        bool o_bound = !object.is_var || o != kUnbound;
        if ((!subject.is_var && subject.fixed == kUnbound) ||
            (!object.is_var && object.fixed == kUnbound))
          continue;
        std::vector<std::uint32_t> preds;
        if (row[pvar] != kUnbound)
          preds.push_back(row[pvar]);
        else
          preds = g_.predicates();
        for (std::uint32_t p : preds) {
          const auto* so = g_.edges_so(p);
          if (!so) continue;
          auto emit = [&](std::uint32_t sv, std::uint32_t ov) {
            Row extended = row;
            if (subject.is_var) extended[subject.var] = sv;
            extended[pvar] = p;
            if (object.is_var) extended[object.var] = ov;
            next.push_back(std::move(extended));
          };
          if (s_bound && o_bound) {
            if (std::binary_search(so->begin(), so->end(),
                                   std::make_pair(s, o)))
              emit(s, o);
          } else if (s_bound) {
            auto lo = std::lower_bound(so->begin(), so->end(),
                                       std::make_pair(s, 0u));
            for (auto e = lo; e != so->end() && e->first == s; ++e)
              emit(s, e->second);
          } else if (o_bound) {
            const auto* os = g_.edges_os(p);
            auto lo = std::lower_bound(os->begin(), os->end(),
                                       std::make_pair(o, 0u));
            for (auto e = lo; e != os->end() && e->first == o; ++e)
              emit(e->second, o);
          } else {
            for (const auto& [sv, ov] : *so) emit(sv, ov);
          }
        }
      }
      rows_ = std::move(next);
      return;
    }

    bool plain = pattern.path.kind == PathExpr::Kind::Predicate;
    std::uint32_t pred =
        plain ? g_.term_id(Value(pattern.path.predicate)) : kUnbound;

    for (const Row& row : rows_) {
      std::uint32_t s = subject.is_var ? row[subject.var] : subject.fixed;
      std::uint32_t o = object.is_var ? row[object.var] : object.fixed;
      bool s_bound = !subject.is_var || s != kUnbound;
      bool o_bound = !object.is_var || o != kUnbound;
      if ((!subject.is_var && subject.fixed == kUnbound) ||
          (!object.is_var && object.fixed == kUnbound))
        continue;  // a fixed term that is absent from the graph cannot match

      auto emit = [&](std::uint32_t sv, std::uint32_t ov) {
        Row extended = row;
        if (subject.is_var) extended[subject.var] = sv;
        if (object.is_var) extended[object.var] = ov;
        next.push_back(std::move(extended));
      };

      if (plain) {
        const auto* so = pred == kUnbound ? nullptr : g_.edges_so(pred);
        if (!so) continue;
        if (s_bound && o_bound) {
          if (std::binary_search(so->begin(), so->end(), std::make_pair(s, o)))
            emit(s, o);
        } else if (s_bound) {
          auto lo = std::lower_bound(so->begin(), so->end(),
                                     std::make_pair(s, 0u));
          for (auto e = lo; e != so->end() && e->first == s; ++e)
            emit(s, e->second);
        } else if (o_bound) {
          const auto* os = g_.edges_os(pred);
          auto lo = std::lower_bound(os->begin(), os->end(),
                                     std::make_pair(o, 0u));
          for (auto e = lo; e != os->end() && e->first == o; ++e)
            emit(e->second, o);
        } else {
          for (const auto& [sv, ov] : *so) emit(sv, ov);
        }
      } else {
        if (s_bound) {
          if (!g_.is_iri(s)) continue;
          const auto& ends = closure_of(g_, pattern.path, s, cache);
          if (o_bound) {
            if (std::binary_search(ends.begin(), ends.end(), o)) emit(s, o);
          } else {
            for (std::uint32_t end : ends) emit(s, end);
          }
        } else {
          for (std::uint32_t start : g_.iri_terms()) {
            const auto& ends = closure_of(g_, pattern.path, start, cache);
            if (o_bound) {
              if (std::binary_search(ends.begin(), ends.end(), o))
                emit(start, o);
            } else {
              for (std::uint32_t end : ends) emit(start, end);
            }
          }
        }
      }
    }
    rows_ = std::move(next);
  }

  std::optional<Value> row_value(const Row& row, int var) const {
    if (row[var] == kUnbound) return std::nullopt;
    return g_.term(row[var]);
  }

  Value eval_expr(const ExprPtr& expr, const Row& row) const {
    switch (expr->kind) {
      case Expression::Kind::Literal:
        return expr->literal;
      case Expression::Kind::Var: {
        auto it = vars_.find(expr->var);
        if (it == vars_.end() || row[it->second] == kUnbound)
          throw EvaluationError("unbound variable ?" + expr->var);
        return g_.term(row[it->second]);
      }
      case Expression::Kind::Compare: {
        Value a = eval_expr(expr->args[0], row);
        Value b = eval_expr(expr->args[1], row);
        bool ordering = expr->op != "=" && expr->op != "!=";
        int c = compare_values(a, b, ordering);
        bool result;
        if (expr->op == "=") result = c == 0;
        else if (expr->op == "!=") result = c != 0;
        else if (expr->op == "<") result = c < 0;
        else if (expr->op == ">") result = c > 0 && c != 2;
        else if (expr->op == "<=") result = c <= 0;
        else result = (c > 0 && c != 2) || c == 0;
        return Value(LiteralValue::boolean(result));
      }
      case Expression::Kind::Arith: {
        Num a = to_num(eval_expr(expr->args[0], row));
        Num b = to_num(eval_expr(expr->args[1], row));
        return num_to_value(arith(a, expr->op, b));
      }
      case Expression::Kind::Negate: {
        Num a = to_num(eval_expr(expr->args[0], row));
        return num_to_value(arith(Num{false, 0, {}}, "-", a));
      }
      case Expression::Kind::If: {
        Value cond = eval_expr(expr->args[0], row);
        if (is_ref(cond) ||
            std::get<LiteralValue>(cond).datatype != ObjectKind::Boolean)
          throw TypeError("IF condition is not a boolean");
        bool yes = std::get<LiteralValue>(cond).lexical == "true";
        return eval_expr(expr->args[yes ? 1 : 2], row);
      }
      default:
        throw EvaluationError("aggregate evaluated outside a group");
    }
  }

  void apply_binds_and_filters() {
    // BINDs extend rows in declaration order; FILTERs then restrict the
    // joined solution. An error in a FILTER drops the row, an error in a
    // BIND leaves the target unbound.
    for (const auto& element : ast_.where) {
      if (element.kind != WhereElement::Kind::Bind) continue;
      int target = vars_.at(element.bind_var);
      for (auto& row : rows_) {
        try {
          Value v = eval_expr(element.expr, row);
          row[target] = intern_value(v);
        } catch (const Error&) {
          row[target] = kUnbound;
        }
      }
    }
    for (const auto& element : ast_.where) {
      if (element.kind != WhereElement::Kind::Filter) continue;
      std::vector<Row> kept;
      for (auto& row : rows_) {
        try {
          Value v = eval_expr(element.expr, row);
          if (!is_ref(v) &&
              std::get<LiteralValue>(v).datatype == ObjectKind::Boolean &&
              std::get<LiteralValue>(v).lexical == "true")
            kept.push_back(std::move(row));
        } catch (const Error&) {
          // filter errors exclude the row
        }
      }
      rows_ = std::move(kept);
    }
  }

  // BIND results may create terms that are not in the graph; give them ids
  std::uint32_t intern_value(const Value& v) {
    std::uint32_t id = g_.term_id(v);
    if (id != kUnbound) return id;
    std::string key = key_string(v);
    auto it = extra_ids_.find(key);
    if (it != extra_ids_.end()) return it->second;
    auto id2 = static_cast<std::uint32_t>(kExtraBase + extra_terms_.size());
    extra_terms_.push_back(v);
    extra_ids_.emplace(std::move(key), id2);
    return id2;
  }

  const Value& term_at(std::uint32_t id) const {
    if (id >= kExtraBase) return extra_terms_[id - kExtraBase];
    return g_.term(id);
  }

  Value eval_aggregate(const ExprPtr& expr,
                       const std::vector<const Row*>& group) const {
    switch (expr->kind) {
      case Expression::Kind::Count: {
        auto it = vars_.find(expr->var);
        std::int64_t n = 0;
        if (it != vars_.end())
          for (const Row* row : group)
            if ((*row)[it->second] != kUnbound) ++n;
        return Value(LiteralValue::integer(n));
      }
      case Expression::Kind::Sum: {
        auto it = vars_.find(expr->var);
        bool decimal = false;
        std::int64_t int_sum = 0;
        Decimal dec_sum;
        if (it != vars_.end())
          for (const Row* row : group) {
            std::uint32_t id = (*row)[it->second];
            if (id == kUnbound) continue;
            Num n = to_num(term_at(id));
            if (!decimal && !n.is_decimal) {
              __int128 r = static_cast<__int128>(int_sum) + n.i;
              if (r > std::numeric_limits<std::int64_t>::max() ||
                  r < std::numeric_limits<std::int64_t>::min()) {
                decimal = true;
                dec_sum = Decimal::from_int(int_sum).add(Decimal::from_int(n.i));
              } else {
                int_sum = static_cast<std::int64_t>(r);
              }
            } else {
              if (!decimal) {
                dec_sum = Decimal::from_int(int_sum);
                decimal = true;
              }
              dec_sum = dec_sum.add(n.as_decimal());
            }
          }
        if (decimal) return Value(LiteralValue::decimal(dec_sum.str()));
        return Value(LiteralValue::integer(int_sum));
      }
      case Expression::Kind::GroupConcat: {
        auto it = vars_.find(expr->var);
        std::vector<std::string> parts;
        if (it != vars_.end())
          for (const Row* row : group) {
            std::uint32_t id = (*row)[it->second];
            if (id != kUnbound) parts.push_back(display_string(term_at(id)));
          }
        std::sort(parts.begin(), parts.end());
        if (expr->distinct)
          parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
        std::string out;
        for (std::size_t i = 0; i < parts.size(); ++i) {
          if (i) out += expr->separator;
          out += parts[i];
        }
        return Value(LiteralValue::str(out));
      }
      default:
        break;
    }
    throw EvaluationError("not an aggregate");
  }

  Value eval_group_expr(const ExprPtr& expr, const Row& key_row,
                        const std::vector<const Row*>& group) const {
    switch (expr->kind) {
      case Expression::Kind::Count:
      case Expression::Kind::Sum:
      case Expression::Kind::GroupConcat:
        return eval_aggregate(expr, group);
      case Expression::Kind::Literal:
        return expr->literal;
      case Expression::Kind::Var: {
        auto it = vars_.find(expr->var);
        if (it == vars_.end() || key_row[it->second] == kUnbound)
          throw EvaluationError("unbound group key ?" + expr->var);
        return term_at(key_row[it->second]);
      }
      case Expression::Kind::Compare:
      case Expression::Kind::Arith:
      case Expression::Kind::Negate:
      case Expression::Kind::If: {
        // evaluate children in group context, then combine
        Expression flat = *expr;
        std::vector<Value> child_values;
        child_values.reserve(expr->args.size());
        for (const auto& arg : expr->args)
          child_values.push_back(eval_group_expr(arg, key_row, group));
        flat.args.clear();
        for (auto& value : child_values) {
          auto lit = std::make_shared<Expression>();
          lit->kind = Expression::Kind::Literal;
          lit->literal = std::move(value);
          flat.args.push_back(std::move(lit));
        }
        Row empty(vars_.size(), kUnbound);
        return eval_expr(std::make_shared<Expression>(std::move(flat)), empty);
      }
    }
    throw EvaluationError("unsupported projection expression");
  }

  SolutionTable project() {
    SolutionTable table;
    for (const auto& projection : ast_.projection)
      table.columns.push_back(projection.var);

    bool grouped = !ast_.group_by.empty() || ast_.has_aggregates();
    if (!grouped) {
      for (const Row& row : rows_) {
        std::vector<std::optional<Value>> out;
        for (const auto& projection : ast_.projection) {
          if (projection.expr) {
            try {
              out.push_back(eval_expr(projection.expr, row));
            } catch (const EvaluationError&) {
              out.push_back(std::nullopt);
            }
          } else {
            int var = vars_.at(projection.var);
            if (row[var] == kUnbound)
              out.push_back(std::nullopt);
            else
              out.push_back(term_at(row[var]));
          }
        }
        table.rows.push_back(std::move(out));
      }
      std::stable_sort(table.rows.begin(), table.rows.end(),
                       [](const auto& a, const auto& b) {
                         std::string ka = a.empty() || !a[0] ? "" : key_string(*a[0]);
                         std::string kb = b.empty() || !b[0] ? "" : key_string(*b[0]);
                         return ka < kb;
                       });
      return table;
    }

    std::vector<int> key_vars;
    for (const auto& key : ast_.group_by) key_vars.push_back(vars_.at(key));

    std::map<std::vector<std::string>, std::pair<Row, std::vector<const Row*>>>
        groups;  // sort key (canonical strings) -> (representative row, rows)
    for (const Row& row : rows_) {
      std::vector<std::string> key;
      for (int var : key_vars)
        key.push_back(row[var] == kUnbound ? std::string()
                                           : key_string(term_at(row[var])));
      auto [it, inserted] = groups.try_emplace(
          std::move(key), std::make_pair(row, std::vector<const Row*>{}));
      it->second.second.push_back(&row);
    }
    if (groups.empty() && ast_.group_by.empty() && ast_.has_aggregates()) {
      // implicit single group over zero rows
      Row empty(vars_.size(), kUnbound);
      std::vector<std::optional<Value>> out;
      for (const auto& projection : ast_.projection)
        out.push_back(eval_group_expr(projection.expr, empty, {}));
      table.rows.push_back(std::move(out));
      return table;
    }
    for (const auto& [key, entry] : groups) {
      (void)key;
      const Row& representative = entry.first;
      std::vector<std::optional<Value>> out;
      for (const auto& projection : ast_.projection) {
        if (projection.expr) {
          out.push_back(
              eval_group_expr(projection.expr, representative, entry.second));
        } else {
          int var = vars_.at(projection.var);
          if (representative[var] == kUnbound)
            out.push_back(std::nullopt);
          else
            out.push_back(term_at(representative[var]));
        }
      }
      table.rows.push_back(std::move(out));
    }
    return table;
  }

  static constexpr std::uint32_t kExtraBase = 0x80000000u;

  const FrozenGraph& g_;
  const QueryAst& ast_;
  std::map<std::string, int> vars_;
  std::vector<Row> rows_;
  std::vector<Value> extra_terms_;
  std::unordered_map<std::string, std::uint32_t> extra_ids_;
  mutable PathCache cache_;
};

}  // namespace

SolutionTable evaluate(const FrozenGraph& graph, const QueryAst& ast) {
  return Evaluator(graph, ast).run();
}

SolutionTable evaluate(const LinkedDocument& doc, const QueryAst& ast) {
  FrozenGraph graph(doc);
  return evaluate(graph, ast);
}

// ---------------------------------------------------------------------------
// SolutionTable rendering
// ---------------------------------------------------------------------------

namespace {

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

std::string cell_text(const std::optional<Value>& value) {
  return value ? display_string(*value) : std::string();
}

}  // namespace

std::string SolutionTable::to_csv() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < columns.size(); ++i)
    out << (i ? "," : "") << csv_escape(columns[i]);
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << csv_escape(cell_text(row[i]));
    out << "\n";
  }
  return out.str();
}

std::string SolutionTable::to_table() const {
  std::vector<std::size_t> widths(columns.size());
  for (std::size_t i = 0; i < columns.size(); ++i)
    widths[i] = columns[i].size();
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size(); ++i)
      widths[i] = std::max(widths[i], cell_text(row[i]).size());
  std::ostringstream out;
  auto emit_row = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out << cells[i] << std::string(widths[i] - cells[i].size(), ' ');
      out << (i + 1 < cells.size() ? "  " : "");
    }
    out << "\n";
  };
  emit_row(columns);
  std::vector<std::string> dashes;
  for (std::size_t w : widths) dashes.push_back(std::string(w, '-'));
  emit_row(dashes);
  for (const auto& row : rows) {
    std::vector<std::string> cells;
    for (const auto& value : row) cells.push_back(cell_text(value));
    emit_row(cells);
  }
  return out.str();
}

std::string SolutionTable::to_json() const {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (row[i])
        obj[columns[i]] = display_string(*row[i]);
      else
        obj[columns[i]] = nullptr;
    }
    arr.push_back(std::move(obj));
  }
  return arr.dump(1, ' ') + "\n";
}

}  // namespace fairprov
