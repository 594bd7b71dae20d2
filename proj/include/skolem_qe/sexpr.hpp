/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The skolem-qe Authors
 */
#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "skolem_qe/error.hpp"

namespace skolem_qe {

/// Minimal s-expression tree with source positions (1-based).
struct SExpr {
  bool is_list = false;
  std::string token;
  std::vector<SExpr> items;
  int line = 1;
  int column = 1;

  bool is_symbol(std::string_view s) const { return !is_list && token == s; }
  bool is_atom() const { return !is_list; }
  std::size_t size() const { return items.size(); }
  const SExpr& operator[](std::size_t i) const { return items.at(i); }

  /// `(head ...)` with an atomic head equal to `s`.
  bool headed_by(std::string_view s) const { return is_list && !items.empty() && items.front().is_symbol(s); }

  std::string where() const { return "line " + std::to_string(line) + ", column " + std::to_string(column); }
};

[[noreturn]] inline void syntax_error(const SExpr& at, const std::string& msg) {
  throw Error(ErrorCode::ParseError, at.where() + ": " + msg);
}

/// Reads every top-level expression. `;` starts a comment; `|...|` quotes symbols
/// and `"..."` strings are kept verbatim.
class SExprReader {
 public:
  explicit SExprReader(std::string_view text) : text_(text) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    skip_space();
    while (pos_ < text_.size()) {
      out.push_back(read());
      skip_space();
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(line_) + ", column " + std::to_string(col_) + ": " + msg);
  }

  char peek() const { return text_[pos_]; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = peek();
      if (c == ';') {
        while (pos_ < text_.size() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  SExpr read() {
    SExpr e;
    e.line = line_;
    e.column = col_;
    char c = peek();
    if (c == '(') {
      advance();
      e.is_list = true;
      skip_space();
      while (true) {
        if (pos_ >= text_.size()) fail("unbalanced '(' opened at line " + std::to_string(e.line));
        if (peek() == ')') {
          advance();
          break;
        }
        e.items.push_back(read());
        skip_space();
      }
      return e;
    }
    if (c == ')') fail("unexpected ')'");
    if (c == '|') {
      advance();
      while (pos_ < text_.size() && peek() != '|') {
        e.token += peek();
        advance();
      }
      if (pos_ >= text_.size()) fail("unterminated quoted symbol");
      advance();
      return e;
    }
    if (c == '"') {
      e.token += c;
      advance();
      while (pos_ < text_.size() && peek() != '"') {
        e.token += peek();
        advance();
      }
      if (pos_ >= text_.size()) fail("unterminated string");
      e.token += '"';
      advance();
      return e;
    }
    while (pos_ < text_.size()) {
      char d = peek();
      if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == ';') break;
      e.token += d;
      advance();
    }
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

inline std::vector<SExpr> read_sexprs(std::string_view text) { return SExprReader(text).read_all(); }

}  // namespace skolem_qe
