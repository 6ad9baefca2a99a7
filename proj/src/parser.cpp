// Copyright 2026 The fblnorm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fblnorm/parser.hpp"

#include <cctype>
#include <charconv>
#include <memory>
#include <variant>
#include <vector>

#include "fblnorm/error.hpp"
#include "fblnorm/text.hpp"

namespace fblnorm {

namespace {

enum class Tok {
  kEnd,
  kNumber,
  kIdent,
  kLParen,
  kRParen,
  kLBracket,
  kRBracket,
  kComma,
  kPlus,
  kMinus,
  kStar,
  kJoin,
  kMeet,
};

struct Token {
  Tok type = Tok::kEnd;
  std::string text;
  double number = 0.0;
  std::size_t line = 1;
  std::size_t column = 1;
};

std::string describe(const Token& t) {
  switch (t.type) {
    case Tok::kEnd:
      return "end of input";
    case Tok::kNumber:
    case Tok::kIdent:
      return "'" + t.text + "'";
    default:
      return "'" + t.text + "'";
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    while (true) {
      skip_space();
      Token t;
      t.line = line_;
      t.column = column_;
      if (pos_ >= text_.size()) {
        tokens.push_back(t);
        return tokens;
      }
      const char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        lex_number(t);
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                text_[pos_] == '_')) {
          advance();
        }
        t.type = Tok::kIdent;
        t.text = std::string(text_.substr(start, pos_ - start));
      } else if (c == '\\' && peek(1) == '/') {
        t.type = Tok::kJoin;
        t.text = "\\/";
        advance();
        advance();
      } else if (c == '/' && peek(1) == '\\') {
        t.type = Tok::kMeet;
        t.text = "/\\";
        advance();
        advance();
      } else {
        t.text = std::string(1, c);
        switch (c) {
          case '(': t.type = Tok::kLParen; break;
          case ')': t.type = Tok::kRParen; break;
          case '[': t.type = Tok::kLBracket; break;
          case ']': t.type = Tok::kRBracket; break;
          case ',': t.type = Tok::kComma; break;
          case '+': t.type = Tok::kPlus; break;
          case '-': t.type = Tok::kMinus; break;
          case '*': t.type = Tok::kStar; break;
          default:
            throw ParseError(t.line, t.column, "a token",
                             "unexpected character '" + t.text + "'");
        }
        advance();
      }
      tokens.push_back(std::move(t));
    }
  }

 private:
  char peek(std::size_t ahead) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      advance();
    }
  }

  void lex_number(Token& t) {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        advance();
      }
    };
    digits();
    if (peek(0) == '.') {
      advance();
      digits();
    }
    if (peek(0) == 'e' || peek(0) == 'E') {
      const char sign = peek(1);
      const bool has_sign = sign == '+' || sign == '-';
      if (std::isdigit(static_cast<unsigned char>(peek(has_sign ? 2 : 1)))) {
        advance();
        if (has_sign) advance();
        digits();
      }
    }
    t.type = Tok::kNumber;
    t.text = std::string(text_.substr(start, pos_ - start));
    auto value = parse_number(t.text);
    if (!value) throw ParseError(t.line, t.column, "a number", "'" + t.text + "'");
    t.number = *value;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

// Unresolved tree: d(e_i) atoms need the final dimension before building.
struct PNode {
  enum class Kind { kUnit, kVector, kScale, kSum, kJoin, kMeet, kAbs, kPos, kNeg };
  Kind kind;
  std::size_t index = 0;
  std::vector<double> values;
  double c = 0.0;
  std::unique_ptr<PNode> a;
  std::unique_ptr<PNode> b;
  std::size_t line = 1;
  std::size_t column = 1;
};

using PNodePtr = std::unique_ptr<PNode>;
// A parsed sub-term is either a pure number or a lattice expression.
using Value = std::variant<double, PNodePtr>;

PNodePtr make_node(PNode::Kind kind, const Token& at) {
  auto node = std::make_unique<PNode>();
  node->kind = kind;
  node->line = at.line;
  node->column = at.column;
  return node;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  PNodePtr parse_all() {
    const Token& start = current();
    Value v = lattice();
    if (current().type != Tok::kEnd) {
      fail("an operator or end of input");
    }
    return require_expr(std::move(v), start);
  }

 private:
  const Token& current() const { return tokens_[pos_]; }

  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseError(current().line, current().column, expected,
                     describe(current()));
  }

  const Token& expect(Tok type, const std::string& what) {
    if (current().type != type) fail(what);
    return tokens_[pos_++];
  }

  static PNodePtr require_expr(Value v, const Token& at) {
    if (auto* node = std::get_if<PNodePtr>(&v)) return std::move(*node);
    throw ParseError(at.line, at.column, "a lattice expression",
                     "a constant (constant terms are not positively "
                     "homogeneous)");
  }

  Value lattice() {
    const Token first = current();
    Value left = additive();
    while (current().type == Tok::kJoin || current().type == Tok::kMeet) {
      const Token op = tokens_[pos_++];
      const Token rhs_start = current();
      Value right = additive();
      auto node = make_node(
          op.type == Tok::kJoin ? PNode::Kind::kJoin : PNode::Kind::kMeet, op);
      node->a = require_expr(std::move(left), first);
      node->b = require_expr(std::move(right), rhs_start);
      left = std::move(node);
    }
    return left;
  }

  Value additive() {
    const Token first = current();
    Value left = term();
    while (current().type == Tok::kPlus || current().type == Tok::kMinus) {
      const Token op = tokens_[pos_++];
      const Token rhs_start = current();
      Value right = term();
      const bool minus = op.type == Tok::kMinus;
      const double* lnum = std::get_if<double>(&left);
      const double* rnum = std::get_if<double>(&right);
      if (lnum && rnum) {
        left = minus ? *lnum - *rnum : *lnum + *rnum;
        continue;
      }
      auto lhs = require_expr(std::move(left), first);
      auto rhs = require_expr(std::move(right), rhs_start);
      if (minus) {
        auto neg = make_node(PNode::Kind::kScale, op);
        neg->c = -1.0;
        neg->a = std::move(rhs);
        rhs = std::move(neg);
      }
      auto node = make_node(PNode::Kind::kSum, op);
      node->a = std::move(lhs);
      node->b = std::move(rhs);
      left = std::move(node);
    }
    return left;
  }

  Value term() {
    const Token first = current();
    double coefficient = 1.0;
    bool any_number = false;
    PNodePtr expr;
    while (true) {
      const Token at = current();
      Value v = unary();
      if (auto* num = std::get_if<double>(&v)) {
        coefficient *= *num;
        any_number = true;
      } else {
        if (expr) {
          throw ParseError(at.line, at.column, "a numeric factor",
                           "a second lattice factor (products of lattice "
                           "expressions are not allowed)");
        }
        expr = std::move(std::get<PNodePtr>(v));
      }
      if (current().type != Tok::kStar) break;
      ++pos_;
    }
    if (!expr) return coefficient;
    if (!any_number) return expr;
    auto node = make_node(PNode::Kind::kScale, first);
    node->c = coefficient;
    node->a = std::move(expr);
    return node;
  }

  Value unary() {
    if (current().type == Tok::kMinus) {
      const Token op = tokens_[pos_++];
      Value v = unary();
      if (auto* num = std::get_if<double>(&v)) return -*num;
      auto node = make_node(PNode::Kind::kScale, op);
      node->c = -1.0;
      node->a = std::move(std::get<PNodePtr>(v));
      return node;
    }
    return factor();
  }

  Value factor() {
    const Token t = current();
    switch (t.type) {
      case Tok::kNumber:
        ++pos_;
        return t.number;
      case Tok::kLParen: {
        ++pos_;
        Value v = lattice();
        expect(Tok::kRParen, "')'");
        return v;
      }
      case Tok::kIdent:
        return named(t);
      default:
        fail("a number, an atom d(...), abs(...), pos(...), neg(...) or '('");
    }
  }

  Value named(const Token& t) {
    if (t.text == "d") {
      ++pos_;
      expect(Tok::kLParen, "'('");
      PNodePtr node;
      if (current().type == Tok::kLBracket) {
        node = make_node(PNode::Kind::kVector, t);
        ++pos_;
        node->values.push_back(signed_number());
        while (current().type == Tok::kComma) {
          ++pos_;
          node->values.push_back(signed_number());
        }
        expect(Tok::kRBracket, "',' or ']'");
      } else if (current().type == Tok::kIdent && current().text.size() > 1 &&
                 current().text[0] == 'e') {
        const Token& id = current();
        std::size_t index = 0;
        const char* first = id.text.data() + 1;
        const char* last = id.text.data() + id.text.size();
        auto [ptr, ec] = std::from_chars(first, last, index);
        if (ec != std::errc{} || ptr != last || index == 0) {
          fail("a basis vector e<positive integer>");
        }
        node = make_node(PNode::Kind::kUnit, t);
        node->index = index;
        ++pos_;
      } else {
        fail("'e<index>' or '[' after 'd('");
      }
      expect(Tok::kRParen, "')'");
      return node;
    }
    PNode::Kind kind;
    if (t.text == "abs") {
      kind = PNode::Kind::kAbs;
    } else if (t.text == "pos") {
      kind = PNode::Kind::kPos;
    } else if (t.text == "neg") {
      kind = PNode::Kind::kNeg;
    } else {
      fail("one of d, abs, pos, neg");
    }
    ++pos_;
    expect(Tok::kLParen, "'('");
    const Token inner = current();
    Value v = lattice();
    expect(Tok::kRParen, "')'");
    auto node = make_node(kind, t);
    node->a = require_expr(std::move(v), inner);
    return node;
  }

  double signed_number() {
    double sign = 1.0;
    while (current().type == Tok::kMinus || current().type == Tok::kPlus) {
      if (current().type == Tok::kMinus) sign = -sign;
      ++pos_;
    }
    const Token& t = expect(Tok::kNumber, "a number");
    return sign * t.number;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

struct DimensionInfo {
  std::size_t max_index = 0;
  std::optional<std::size_t> explicit_dim;
};

void collect(const PNode& node, DimensionInfo& info) {
  if (node.kind == PNode::Kind::kUnit) {
    info.max_index = std::max(info.max_index, node.index);
  } else if (node.kind == PNode::Kind::kVector) {
    if (info.explicit_dim && *info.explicit_dim != node.values.size()) {
      throw DimensionError(*info.explicit_dim, node.values.size(),
                           "atom at line " + std::to_string(node.line) +
                               ", column " + std::to_string(node.column));
    }
    info.explicit_dim = node.values.size();
  }
  if (node.a) collect(*node.a, info);
  if (node.b) collect(*node.b, info);
}

LatticeExpr build(const PNode& node, std::size_t n) {
  switch (node.kind) {
    case PNode::Kind::kUnit:
      if (node.index > n) {
        throw DimensionError(n, node.index,
                             "basis vector d(e" + std::to_string(node.index) +
                                 ") in dimension " + std::to_string(n));
      }
      return generator(node.index, n);
    case PNode::Kind::kVector:
      if (node.values.size() != n) {
        throw DimensionError(n, node.values.size(), "explicit atom");
      }
      return LatticeExpr::atom(node.values);
    case PNode::Kind::kScale:
      return LatticeExpr::scale(node.c, build(*node.a, n));
    case PNode::Kind::kSum:
      return LatticeExpr::sum(build(*node.a, n), build(*node.b, n));
    case PNode::Kind::kJoin:
      return LatticeExpr::join(build(*node.a, n), build(*node.b, n));
    case PNode::Kind::kMeet:
      return LatticeExpr::meet(build(*node.a, n), build(*node.b, n));
    case PNode::Kind::kAbs:
      return LatticeExpr::abs(build(*node.a, n));
    case PNode::Kind::kPos:
      return pos_part(build(*node.a, n));
    case PNode::Kind::kNeg:
      return neg_part(build(*node.a, n));
  }
  throw std::logic_error("unreachable parse node");
}

std::optional<std::size_t> unit_index(std::span<const double> x) {
  std::optional<std::size_t> index;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) continue;
    if (x[i] != 1.0 || index) return std::nullopt;
    index = i + 1;
  }
  return index;
}

void format_into(const LatticeExpr& f, std::string& out) {
  using Kind = LatticeExpr::Kind;
  switch (f.kind()) {
    case Kind::kAtom: {
      const auto x = f.atom_vector();
      if (auto i = unit_index(x)) {
        out += "d(e" + std::to_string(*i) + ")";
      } else {
        out += "d([";
        for (std::size_t k = 0; k < x.size(); ++k) {
          if (k > 0) out += ",";
          out += format_number(x[k]);
        }
        out += "])";
      }
      return;
    }
    case Kind::kScale:
      out += "(" + format_number(f.scalar()) + " * ";
      format_into(f.child(), out);
      out += ")";
      return;
    case Kind::kAbs:
      out += "abs(";
      format_into(f.child(), out);
      out += ")";
      return;
    case Kind::kSum:
    case Kind::kJoin:
    case Kind::kMeet: {
      const char* op = f.kind() == Kind::kSum    ? " + "
                       : f.kind() == Kind::kJoin ? " \\/ "
                                                 : " /\\ ";
      out += "(";
      format_into(f.left(), out);
      out += op;
      format_into(f.right(), out);
      out += ")";
      return;
    }
  }
}

}  // namespace

LatticeExpr parse(std::string_view text, std::optional<std::size_t> dimension) {
  Parser parser(Lexer(text).run());
  PNodePtr root = parser.parse_all();
  DimensionInfo info;
  collect(*root, info);
  std::size_t n = 0;
  if (dimension) {
    n = *dimension;
    if (n == 0) throw Error(ErrorKind::kConfig, "dimension must be positive");
    if (info.explicit_dim && *info.explicit_dim != n) {
      throw DimensionError(n, *info.explicit_dim, "explicit atom");
    }
  } else {
    n = info.explicit_dim ? *info.explicit_dim : info.max_index;
  }
  return build(*root, n);
}

std::string format(const LatticeExpr& f) {
  std::string out;
  format_into(f, out);
  return out;
}

}  // namespace fblnorm
