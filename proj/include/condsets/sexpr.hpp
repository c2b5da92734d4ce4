#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "condsets/errors.hpp"
#include "condsets/rational.hpp"

namespace condsets {

// Parsed s-expression node. Numbers are exact rationals; every node keeps the
// source position it started at so later stages can point there.
struct SExpr {
  enum class Kind { Sym, Num, Str, List };

  Kind kind = Kind::List;
  std::string text;         // symbol name or string contents
  Rat num;                  // Kind::Num only
  std::vector<SExpr> items; // Kind::List only
  int line = 1;
  int col = 1;

  bool is_sym(const char* s) const { return kind == Kind::Sym && text == s; }
  std::string where() const {
    return "line " + std::to_string(line) + " col " + std::to_string(col);
  }
};

namespace sexdetail {

struct Cursor {
  const std::string& src;
  std::size_t i = 0;
  int line = 1;
  int col = 1;

  bool done() const { return i >= src.size(); }
  char peek() const { return src[i]; }
  char take() {
    char c = src[i++];
    if (c == '\n') {
      line++;
      col = 1;
    } else {
      col++;
    }
    return c;
  }
};

[[noreturn]] inline void parse_fail(const Cursor& c, const std::string& msg) {
  fail(Errc::ParseError,
       msg + " at line " + std::to_string(c.line) + " col " + std::to_string(c.col));
}

inline void skip_blank(Cursor& c) {
  while (!c.done()) {
    char ch = c.peek();
    if (ch == ';') {
      while (!c.done() && c.peek() != '\n') c.take();
    } else if (std::isspace(static_cast<unsigned char>(ch))) {
      c.take();
    } else {
      return;
    }
  }
}

inline bool atom_char(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' &&
         c != '"' && c != ';';
}

// [+-]?digits(/digits)? is a number, everything else is a symbol
inline bool numeric_atom(const std::string& t) {
  std::size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
  if (i == t.size()) return false;
  bool slash = false, digit = false;
  for (; i < t.size(); i++) {
    if (t[i] == '/') {
      if (slash || !digit) return false;
      slash = true;
      digit = false;
    } else if (std::isdigit(static_cast<unsigned char>(t[i]))) {
      digit = true;
    } else {
      return false;
    }
  }
  return digit;
}

inline SExpr parse_one(Cursor& c);

inline SExpr parse_list(Cursor& c, int line, int col) {
  SExpr out;
  out.kind = SExpr::Kind::List;
  out.line = line;
  out.col = col;
  for (;;) {
    skip_blank(c);
    if (c.done()) {
      Cursor at = c;
      at.line = line;
      at.col = col;
      parse_fail(at, "unclosed '('");
    }
    if (c.peek() == ')') {
      c.take();
      return out;
    }
    out.items.push_back(parse_one(c));
  }
}

inline SExpr parse_one(Cursor& c) {
  skip_blank(c);
  if (c.done()) parse_fail(c, "unexpected end of input");
  int line = c.line, col = c.col;
  char ch = c.peek();
  if (ch == '(') {
    c.take();
    return parse_list(c, line, col);
  }
  if (ch == ')') parse_fail(c, "unmatched ')'");
  SExpr out;
  out.line = line;
  out.col = col;
  if (ch == '"') {
    c.take();
    out.kind = SExpr::Kind::Str;
    for (;;) {
      if (c.done()) parse_fail(c, "unterminated string");
      char d = c.take();
      if (d == '"') return out;
      if (d == '\\') {
        if (c.done()) parse_fail(c, "unterminated string");
        char e = c.take();
        if (e == 'n') out.text += '\n';
        else if (e == 't') out.text += '\t';
        else if (e == '"' || e == '\\') out.text += e;
        else parse_fail(c, std::string("unknown escape '\\") + e + "'");
      } else {
        out.text += d;
      }
    }
  }
  std::string tok;
  while (!c.done() && atom_char(c.peek())) tok += c.take();
  if (numeric_atom(tok)) {
    out.kind = SExpr::Kind::Num;
    out.num = parse_rat(tok);
  } else {
    out.kind = SExpr::Kind::Sym;
    out.text = tok;
  }
  return out;
}

}  // namespace sexdetail

inline std::vector<SExpr> parse_sexprs(const std::string& src) {
  sexdetail::Cursor c{src};
  std::vector<SExpr> out;
  for (;;) {
    sexdetail::skip_blank(c);
    if (c.done()) return out;
    out.push_back(sexdetail::parse_one(c));
  }
}

}  // namespace condsets
