#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "halcheck/catalog.hpp"
#include "halcheck/error.hpp"

namespace halcheck::frontend {

enum class TokenKind { Ident, Int, String, Char, Punct, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  SourceLoc loc;
  std::size_t offset = 0;  // byte offset of the first character
  std::size_t end = 0;     // one past the last character
};

// Splits mini-C source into tokens. Comments are dropped; preprocessor
// directives are rejected.
class Lexer {
public:
  explicit Lexer(std::string_view source) : src_(source) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      Token tok;
      tok.loc = {line_, col_};
      tok.offset = pos_;
      if (pos_ >= src_.size()) {
        tok.kind = TokenKind::End;
        tok.end = pos_;
        out.push_back(std::move(tok));
        return out;
      }
      const char c = src_[pos_];
      if (c == '#') throw SyntaxError(tok.loc, "preprocessor directives are not supported");
      if (detail::is_ident_start(c)) {
        while (pos_ < src_.size() && detail::is_ident_char(src_[pos_])) advance();
        tok.kind = TokenKind::Ident;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        // Covers decimal, hex, octal and integer suffixes; values are never evaluated.
        while (pos_ < src_.size() && detail::is_ident_char(src_[pos_])) advance();
        tok.kind = TokenKind::Int;
      } else if (c == '"' || c == '\'') {
        lex_quoted(c, tok.loc);
        tok.kind = c == '"' ? TokenKind::String : TokenKind::Char;
      } else {
        lex_punct(tok.loc);
        tok.kind = TokenKind::Punct;
      }
      tok.end = pos_;
      tok.text = std::string(src_.substr(tok.offset, pos_ - tok.offset));
      out.push_back(std::move(tok));
    }
  }

private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  bool at(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }

  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
        advance();
      } else if (at("//")) {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (at("/*")) {
        const SourceLoc start{line_, col_};
        advance();
        advance();
        while (pos_ < src_.size() && !at("*/")) advance();
        if (pos_ >= src_.size()) throw SyntaxError(start, "unterminated comment");
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  void lex_quoted(char quote, SourceLoc start) {
    advance();
    while (pos_ < src_.size() && src_[pos_] != quote) {
      if (src_[pos_] == '\n') break;
      if (src_[pos_] == '\\' && pos_ + 1 < src_.size()) advance();
      advance();
    }
    if (pos_ >= src_.size() || src_[pos_] != quote)
      throw SyntaxError(start, quote == '"' ? "unterminated string literal"
                                            : "unterminated character literal");
    advance();
  }

  void lex_punct(SourceLoc loc) {
    static constexpr std::string_view kPuncts[] = {
        "<<=", ">>=", "...", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=", "&&", "||",
        "+=",  "-=",  "*=",  "/=", "%=", "&=", "|=", "^=", "(",  ")",  "{",  "}",  "[",  "]",
        ";",   ",",   ".",   "?",  ":",  "=",  "<",  ">",  "+",  "-",  "*",  "/",  "%",  "&",
        "|",   "^",   "!",   "~"};
    for (auto p : kPuncts) {
      if (at(p)) {
        for (std::size_t i = 0; i < p.size(); ++i) advance();
        return;
      }
    }
    throw SyntaxError(loc, std::string("unexpected character '") + src_[pos_] + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

inline std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace halcheck::frontend
