#pragma once

#include <optional>
#include <string>
#include <vector>

#include "halcheck/error.hpp"

namespace halcheck::frontend {

struct Expr {
  enum class Kind {
    Ident,
    Literal,      // integer, string or character literal; text holds the spelling
    Call,         // text = callee, children = arguments
    Unary,        // text = operator (prefix), cast or sizeof
    Postfix,      // text = "++" / "--"
    Binary,       // text = operator, children = {lhs, rhs}
    LogicalAnd,
    LogicalOr,
    Conditional,  // children = {cond, then, else}
    Assign,       // text = operator
    Index,
    Member,       // text = "." or "->", member name in `name`
    InitList,
  };

  Kind kind = Kind::Literal;
  std::string text;
  std::string name;
  SourceLoc loc;
  std::vector<Expr> children;

  // Calls only: source spelling of each argument.
  std::vector<std::string> arg_text;
  // ioctl calls only: the request constant (second argument).
  std::optional<std::string> request;
};

struct Declarator {
  std::string name;
  SourceLoc loc;
  std::optional<Expr> init;
};

struct Stmt {
  enum class Kind { Decl, Expr, If, While, For, Return, Block, Empty };

  Kind kind = Kind::Empty;
  SourceLoc loc;
  std::vector<Declarator> decls;  // Decl
  std::optional<Expr> expr;       // Expr; Return value; If/While/For condition
  std::optional<Expr> step;       // For
  std::vector<Stmt> init;         // For: at most one Decl or Expr statement
  std::vector<Stmt> body;         // Block items; If {then, else?}; While/For {body}
};

struct FunctionDef {
  std::string name;
  SourceLoc loc;
  std::vector<std::string> params;
  Stmt body;  // Block
  SourceLoc end_loc;  // closing brace
};

struct Ast {
  std::vector<FunctionDef> functions;
  std::vector<Declarator> globals;

  const FunctionDef* find(std::string_view name) const {
    for (const auto& f : functions)
      if (f.name == name) return &f;
    return nullptr;
  }
};

}  // namespace halcheck::frontend
