#pragma once

#include <algorithm>
#include <cctype>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pldnn {

// ============================================================================
// Propositional expression AST
// ============================================================================

enum class ExprOp { Var, Not, And, Or, Xor, Nand, Nor };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  ExprOp op = ExprOp::Var;
  std::string name;  // Var only
  ExprPtr lhs;       // Not operand / binary left
  ExprPtr rhs;       // binary right
};

inline ExprPtr make_var(std::string name) {
  return std::make_shared<Expr>(Expr{ExprOp::Var, std::move(name), nullptr, nullptr});
}

inline ExprPtr make_not(ExprPtr operand) {
  return std::make_shared<Expr>(Expr{ExprOp::Not, {}, std::move(operand), nullptr});
}

inline ExprPtr make_binary(ExprOp op, ExprPtr lhs, ExprPtr rhs) {
  return std::make_shared<Expr>(Expr{op, {}, std::move(lhs), std::move(rhs)});
}

/// Distinct variable names, sorted.
inline std::vector<std::string> variables(const Expr& expr) {
  std::vector<std::string> names;
  const auto walk = [&names](const Expr& node, const auto& self) -> void {
    if (node.op == ExprOp::Var) {
      names.push_back(node.name);
      return;
    }
    if (node.lhs) self(*node.lhs, self);
    if (node.rhs) self(*node.rhs, self);
  };
  walk(expr, walk);
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return names;
}

/// Fully parenthesized rendering, mainly for diagnostics and tests.
inline std::string to_string(const Expr& expr) {
  switch (expr.op) {
    case ExprOp::Var: return expr.name;
    case ExprOp::Not: return "!" + to_string(*expr.lhs);
    case ExprOp::And: return "(" + to_string(*expr.lhs) + " & " + to_string(*expr.rhs) + ")";
    case ExprOp::Or: return "(" + to_string(*expr.lhs) + " | " + to_string(*expr.rhs) + ")";
    case ExprOp::Xor: return "(" + to_string(*expr.lhs) + " ^ " + to_string(*expr.rhs) + ")";
    case ExprOp::Nand: return "(" + to_string(*expr.lhs) + " NAND " + to_string(*expr.rhs) + ")";
    case ExprOp::Nor: return "(" + to_string(*expr.lhs) + " NOR " + to_string(*expr.rhs) + ")";
  }
  return "?";
}

// ============================================================================
// Parser
// ============================================================================

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " (at offset " + std::to_string(position) + ")"), position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

namespace detail {

enum class TokKind { Ident, Not, And, Or, Xor, Nand, Nor, LParen, RParen, End };

struct Token {
  TokKind kind;
  std::string text;
  std::size_t pos;
};

inline std::vector<Token> lex_expression(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '!') tokens.push_back({TokKind::Not, "!", i++});
    else if (c == '&') tokens.push_back({TokKind::And, "&", i++});
    else if (c == '|') tokens.push_back({TokKind::Or, "|", i++});
    else if (c == '^') tokens.push_back({TokKind::Xor, "^", i++});
    else if (c == '(') tokens.push_back({TokKind::LParen, "(", i++});
    else if (c == ')') tokens.push_back({TokKind::RParen, ")", i++});
    else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = i;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
        ++i;
      std::string word(text.substr(start, i - start));
      if (word == "NAND") tokens.push_back({TokKind::Nand, std::move(word), start});
      else if (word == "NOR") tokens.push_back({TokKind::Nor, std::move(word), start});
      else tokens.push_back({TokKind::Ident, std::move(word), start});
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
  }
  tokens.push_back({TokKind::End, "", text.size()});
  return tokens;
}

// Precedence, tightest first: ! then & (with NAND, NOR) then ^ then |.
class ExprParser {
 public:
  explicit ExprParser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  ExprPtr parse() {
    if (tokens_.front().kind == TokKind::End) throw ParseError("empty input", 0);
    ExprPtr expr = parse_or();
    if (peek().kind != TokKind::End)
      throw ParseError("unexpected token '" + peek().text + "'", peek().pos);
    return expr;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }

  ExprPtr parse_or() {
    ExprPtr lhs = parse_xor();
    while (peek().kind == TokKind::Or) {
      advance();
      lhs = make_binary(ExprOp::Or, std::move(lhs), parse_xor());
    }
    return lhs;
  }

  ExprPtr parse_xor() {
    ExprPtr lhs = parse_and();
    while (peek().kind == TokKind::Xor) {
      advance();
      lhs = make_binary(ExprOp::Xor, std::move(lhs), parse_and());
    }
    return lhs;
  }

  ExprPtr parse_and() {
    ExprPtr lhs = parse_unary();
    for (;;) {
      const TokKind kind = peek().kind;
      if (kind == TokKind::And) {
        advance();
        lhs = make_binary(ExprOp::And, std::move(lhs), parse_unary());
      } else if (kind == TokKind::Nand) {
        advance();
        lhs = make_binary(ExprOp::Nand, std::move(lhs), parse_unary());
      } else if (kind == TokKind::Nor) {
        advance();
        lhs = make_binary(ExprOp::Nor, std::move(lhs), parse_unary());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_unary() {
    if (peek().kind == TokKind::Not) {
      advance();
      return make_not(parse_unary());
    }
    return parse_primary();
  }

  ExprPtr parse_primary() {
    const Token& tok = peek();
    if (tok.kind == TokKind::Ident) {
      advance();
      return make_var(tok.text);
    }
    if (tok.kind == TokKind::LParen) {
      const std::size_t open_pos = tok.pos;
      advance();
      ExprPtr inner = parse_or();
      if (peek().kind != TokKind::RParen)
        throw ParseError("unbalanced parenthesis", open_pos);
      advance();
      return inner;
    }
    throw ParseError(tok.kind == TokKind::End ? "unexpected end of input"
                                              : "unexpected token '" + tok.text + "'",
                     tok.pos);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses `! & ^ |` with that precedence order, infix NAND/NOR at `&`
/// precedence, parentheses, and identifiers [A-Za-z_][A-Za-z0-9_]*.
inline ExprPtr parse_expression(std::string_view text) {
  return detail::ExprParser(detail::lex_expression(text)).parse();
}

}  // namespace pldnn
