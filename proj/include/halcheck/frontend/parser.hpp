#pragma once

// Recursive-descent parser for the mini-C subset:
//
//   program    := (funcdef | prototype | global-decl)+
//   funcdef    := type declarator "(" params? ")" block
//   statements := declaration | expression ";" | if/else | while | for
//                 | return | block | ";"
//
// Expression precedence, loosest first: assignment, conditional, ||, &&, |,
// ^, &, equality, relational, shift, additive, multiplicative, unary (incl.
// casts and sizeof), postfix (call, index, member, ++/--), primary.
// Types are parsed and discarded; only names, calls and control flow are kept.

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "halcheck/frontend/ast.hpp"
#include "halcheck/frontend/lexer.hpp"

namespace halcheck::frontend {

namespace detail {

inline bool is_type_keyword(std::string_view s) {
  static const std::set<std::string_view> kTypeWords = {
      "void",     "char",     "short",    "int",      "long",     "float",   "double",
      "signed",   "unsigned", "const",    "volatile", "static",   "extern",  "register",
      "inline",   "bool",     "_Bool",    "struct",   "union",    "enum",    "size_t",
      "ssize_t",  "off_t",    "uint8_t",  "uint16_t", "uint32_t", "uint64_t", "int8_t",
      "int16_t",  "int32_t",  "int64_t",  "uintptr_t", "intptr_t"};
  return kTypeWords.contains(s);
}

inline bool is_reserved(std::string_view s) {
  static const std::set<std::string_view> kReserved = {
      "if", "else", "while", "for", "return", "sizeof", "do", "switch", "case",
      "default", "break", "continue", "goto", "typedef"};
  return kReserved.contains(s) || is_type_keyword(s);
}

}  // namespace detail

class Parser {
public:
  explicit Parser(std::string_view source) : src_(source), toks_(tokenize(source)) {}

  Ast parse_program() {
    Ast ast;
    std::set<std::string> defined;
    if (peek().kind == TokenKind::End) throw SyntaxError(peek().loc, "empty program");
    while (peek().kind != TokenKind::End) {
      if (!starts_type()) throw error_here("expected a declaration or function definition");
      parse_type();
      Declarator first = parse_declarator();
      if (accept("(")) {
        FunctionDef fn;
        fn.name = first.name;
        fn.loc = first.loc;
        fn.params = parse_params();
        expect(")");
        if (accept(";")) continue;  // prototype
        if (!defined.insert(fn.name).second)
          throw SyntaxError(fn.loc, "redefinition of function '" + fn.name + "'");
        fn.body = parse_block();
        fn.end_loc = toks_[pos_ - 1].loc;
        ast.functions.push_back(std::move(fn));
        continue;
      }
      parse_init(first);
      ast.globals.push_back(std::move(first));
      while (accept(",")) {
        Declarator d = parse_declarator();
        parse_init(d);
        ast.globals.push_back(std::move(d));
      }
      expect(";");
    }
    return ast;
  }

private:
  // --- token helpers -------------------------------------------------------

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }

  bool is(std::string_view punct_or_kw, std::size_t ahead = 0) const {
    const auto& t = peek(ahead);
    return (t.kind == TokenKind::Punct || t.kind == TokenKind::Ident) && t.text == punct_or_kw;
  }

  bool accept(std::string_view text) {
    if (!is(text)) return false;
    ++pos_;
    return true;
  }

  SyntaxError error_here(const std::string& what) const {
    const auto& t = peek();
    if (t.kind == TokenKind::End) return SyntaxError(t.loc, what + ", found end of input");
    return SyntaxError(t.loc, what + ", found '" + t.text + "'");
  }

  const Token& expect(std::string_view text) {
    if (!is(text)) throw error_here("expected '" + std::string(text) + "'");
    return toks_[pos_++];
  }

  const Token& expect_ident(const char* what) {
    const auto& t = peek();
    if (t.kind != TokenKind::Ident || detail::is_reserved(t.text))
      throw error_here(std::string("expected ") + what);
    return toks_[pos_++];
  }

  // --- types and declarators ----------------------------------------------

  bool starts_type(std::size_t ahead = 0) const {
    const auto& t = peek(ahead);
    return t.kind == TokenKind::Ident && detail::is_type_keyword(t.text);
  }

  void parse_type() {
    bool any = false;
    while (starts_type()) {
      const std::string word = toks_[pos_++].text;
      any = true;
      if (word == "struct" || word == "union" || word == "enum") expect_ident("tag name");
    }
    if (!any) throw error_here("expected a type");
  }

  Declarator parse_declarator() {
    while (accept("*"))
      while (accept("const") || accept("volatile")) {
      }
    Declarator d;
    d.loc = peek().loc;
    d.name = expect_ident("identifier").text;
    while (accept("[")) {
      if (!is("]")) parse_expr();
      expect("]");
    }
    return d;
  }

  void parse_init(Declarator& d) {
    if (accept("=")) d.init = is("{") ? parse_init_list() : parse_assignment();
  }

  Expr parse_init_list() {
    Expr list;
    list.kind = Expr::Kind::InitList;
    list.loc = expect("{").loc;
    while (!is("}")) {
      if (accept(".")) {
        expect_ident("member designator");
        expect("=");
      }
      list.children.push_back(is("{") ? parse_init_list() : parse_assignment());
      if (!accept(",")) break;
    }
    expect("}");
    return list;
  }

  std::vector<std::string> parse_params() {
    std::vector<std::string> out;
    if (is(")")) return out;
    if (is("void") && is(")", 1)) {
      ++pos_;
      return out;
    }
    for (;;) {
      if (accept("...")) break;
      parse_type();
      if (is(",") || is(")")) {
        out.emplace_back();
      } else {
        out.push_back(parse_declarator().name);
      }
      if (!accept(",")) break;
    }
    return out;
  }

  // --- statements ----------------------------------------------------------

  Stmt parse_block() {
    Stmt block;
    block.kind = Stmt::Kind::Block;
    block.loc = expect("{").loc;
    while (!is("}")) {
      if (peek().kind == TokenKind::End) throw error_here("expected '}'");
      block.body.push_back(parse_statement());
    }
    expect("}");
    return block;
  }

  Stmt parse_declaration() {
    Stmt s;
    s.kind = Stmt::Kind::Decl;
    s.loc = peek().loc;
    parse_type();
    do {
      Declarator d = parse_declarator();
      parse_init(d);
      s.decls.push_back(std::move(d));
    } while (accept(","));
    expect(";");
    return s;
  }

  Stmt parse_statement() {
    const Token& t = peek();
    Stmt s;
    s.loc = t.loc;
    if (is("{")) return parse_block();
    if (accept(";")) return s;
    if (starts_type()) return parse_declaration();
    if (accept("if")) {
      s.kind = Stmt::Kind::If;
      expect("(");
      s.expr = parse_expr();
      expect(")");
      s.body.push_back(parse_statement());
      if (accept("else")) s.body.push_back(parse_statement());
      return s;
    }
    if (accept("while")) {
      s.kind = Stmt::Kind::While;
      expect("(");
      s.expr = parse_expr();
      expect(")");
      s.body.push_back(parse_statement());
      return s;
    }
    if (accept("for")) {
      s.kind = Stmt::Kind::For;
      expect("(");
      if (starts_type()) {
        s.init.push_back(parse_declaration());
      } else if (!accept(";")) {
        Stmt init;
        init.kind = Stmt::Kind::Expr;
        init.loc = peek().loc;
        init.expr = parse_expr();
        expect(";");
        s.init.push_back(std::move(init));
      }
      if (!is(";")) s.expr = parse_expr();
      expect(";");
      if (!is(")")) s.step = parse_expr();
      expect(")");
      s.body.push_back(parse_statement());
      return s;
    }
    if (accept("return")) {
      s.kind = Stmt::Kind::Return;
      if (!is(";")) s.expr = parse_expr();
      expect(";");
      return s;
    }
    if (t.kind == TokenKind::Ident && detail::is_reserved(t.text))
      throw error_here("unsupported statement");
    s.kind = Stmt::Kind::Expr;
    s.expr = parse_expr();
    expect(";");
    return s;
  }

  // --- expressions ---------------------------------------------------------

  static Expr make(Expr::Kind kind, std::string text, SourceLoc loc, std::vector<Expr> children) {
    Expr e;
    e.kind = kind;
    e.text = std::move(text);
    e.loc = loc;
    e.children = std::move(children);
    return e;
  }

  Expr parse_expr() { return parse_assignment(); }

  Expr parse_assignment() {
    Expr lhs = parse_conditional();
    static constexpr std::string_view kAssignOps[] = {"=",  "+=", "-=", "*=",  "/=", "%=",
                                                      "&=", "|=", "^=", "<<=", ">>="};
    for (auto op : kAssignOps) {
      if (is(op)) {
        const SourceLoc loc = toks_[pos_++].loc;
        Expr rhs = parse_assignment();
        return make(Expr::Kind::Assign, std::string(op), loc, {std::move(lhs), std::move(rhs)});
      }
    }
    return lhs;
  }

  Expr parse_conditional() {
    Expr cond = parse_logical_or();
    if (!is("?")) return cond;
    const SourceLoc loc = toks_[pos_++].loc;
    Expr then_e = parse_expr();
    expect(":");
    Expr else_e = parse_conditional();
    return make(Expr::Kind::Conditional, "?:", loc,
                {std::move(cond), std::move(then_e), std::move(else_e)});
  }

  Expr parse_logical_or() {
    Expr lhs = parse_logical_and();
    while (is("||")) {
      const SourceLoc loc = toks_[pos_++].loc;
      Expr rhs = parse_logical_and();
      lhs = make(Expr::Kind::LogicalOr, "||", loc, {std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  Expr parse_logical_and() {
    Expr lhs = parse_binary(0);
    while (is("&&")) {
      const SourceLoc loc = toks_[pos_++].loc;
      Expr rhs = parse_binary(0);
      lhs = make(Expr::Kind::LogicalAnd, "&&", loc, {std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  // Left-associative binary levels from | down to multiplicative.
  Expr parse_binary(int level) {
    static const std::vector<std::vector<std::string_view>> kLevels = {
        {"|"}, {"^"}, {"&"}, {"==", "!="}, {"<", ">", "<=", ">="}, {"<<", ">>"}, {"+", "-"},
        {"*", "/", "%"}};
    if (level == static_cast<int>(kLevels.size())) return parse_unary();
    Expr lhs = parse_binary(level + 1);
    for (;;) {
      bool matched = false;
      for (auto op : kLevels[level]) {
        if (peek().kind == TokenKind::Punct && peek().text == op) {
          const SourceLoc loc = toks_[pos_++].loc;
          Expr rhs = parse_binary(level + 1);
          lhs = make(Expr::Kind::Binary, std::string(op), loc, {std::move(lhs), std::move(rhs)});
          matched = true;
          break;
        }
      }
      if (!matched) return lhs;
    }
  }

  Expr parse_unary() {
    const Token& t = peek();
    static constexpr std::string_view kPrefix[] = {"!", "-", "+", "~", "*", "&", "++", "--"};
    if (t.kind == TokenKind::Punct) {
      for (auto op : kPrefix) {
        if (t.text == op) {
          ++pos_;
          return make(Expr::Kind::Unary, std::string(op), t.loc, {parse_unary()});
        }
      }
      if (t.text == "(" && starts_type(1)) {
        ++pos_;
        parse_type();
        while (accept("*")) {
        }
        expect(")");
        return make(Expr::Kind::Unary, "cast", t.loc, {parse_unary()});
      }
    }
    if (is("sizeof")) {
      ++pos_;
      if (is("(") && starts_type(1)) {
        ++pos_;
        parse_type();
        while (accept("*")) {
        }
        expect(")");
        return make(Expr::Kind::Literal, "sizeof", t.loc, {});
      }
      return make(Expr::Kind::Unary, "sizeof", t.loc, {parse_unary()});
    }
    return parse_postfix();
  }

  Expr parse_postfix() {
    Expr e = parse_primary();
    for (;;) {
      if (is("(")) {
        if (e.kind != Expr::Kind::Ident)
          throw error_here("only direct calls of named functions are supported");
        e = parse_call(std::move(e));
      } else if (is("[")) {
        const SourceLoc loc = toks_[pos_++].loc;
        Expr idx = parse_expr();
        expect("]");
        e = make(Expr::Kind::Index, "[]", loc, {std::move(e), std::move(idx)});
      } else if (is(".") || is("->")) {
        const Token& op = toks_[pos_++];
        Expr m = make(Expr::Kind::Member, op.text, op.loc, {std::move(e)});
        m.name = expect_ident("member name").text;
        e = std::move(m);
      } else if (is("++") || is("--")) {
        const Token& op = toks_[pos_++];
        e = make(Expr::Kind::Postfix, op.text, op.loc, {std::move(e)});
      } else {
        return e;
      }
    }
  }

  Expr parse_call(Expr callee) {
    Expr call = make(Expr::Kind::Call, callee.text, callee.loc, {});
    expect("(");
    if (!is(")")) {
      do {
        const std::size_t first = peek().offset;
        call.children.push_back(parse_assignment());
        const std::size_t last = toks_[pos_ - 1].end;
        call.arg_text.emplace_back(src_.substr(first, last - first));
      } while (accept(","));
    }
    expect(")");
    if (call.text == kRequestDispatchFunction) {
      if (call.children.size() < 2)
        throw SyntaxError(call.loc, "ioctl call needs a request constant as second argument");
      const Expr& req = call.children[1];
      if (req.kind != Expr::Kind::Ident)
        throw SyntaxError(req.loc, "ioctl request must be an identifier constant, found '" +
                                       call.arg_text[1] + "'");
      call.request = req.text;
    }
    return call;
  }

  Expr parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Ident:
        if (detail::is_reserved(t.text)) throw error_here("expected an expression");
        ++pos_;
        return make(Expr::Kind::Ident, t.text, t.loc, {});
      case TokenKind::Int:
      case TokenKind::Char:
        ++pos_;
        return make(Expr::Kind::Literal, t.text, t.loc, {});
      case TokenKind::String: {
        Expr lit = make(Expr::Kind::Literal, t.text, t.loc, {});
        ++pos_;
        while (peek().kind == TokenKind::String) lit.text += toks_[pos_++].text;
        return lit;
      }
      case TokenKind::Punct:
        if (t.text == "(") {
          ++pos_;
          Expr inner = parse_expr();
          expect(")");
          return inner;
        }
        break;
      case TokenKind::End:
        break;
    }
    throw error_here("expected an expression");
  }

  std::string_view src_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

inline Ast parse_program(std::string_view source) { return Parser(source).parse_program(); }

}  // namespace halcheck::frontend
