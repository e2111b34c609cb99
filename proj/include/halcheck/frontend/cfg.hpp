#pragma once

// Per-function control-flow graphs whose nodes carry HAL-call events.
//
// Lowering treats every branch as nondeterministic: conditions are never
// evaluated, loops may run any number of times, and && / || / ?: split
// control flow whenever their right-hand side contains a call.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "halcheck/catalog.hpp"
#include "halcheck/frontend/ast.hpp"
#include "halcheck/frontend/parser.hpp"

namespace halcheck {

using NodeId = std::size_t;

enum class NodeKind { Entry, Exit, Event, Call, Branch, Join, Noop };

inline const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::Entry: return "entry";
    case NodeKind::Exit: return "exit";
    case NodeKind::Event: return "event";
    case NodeKind::Call: return "call";
    case NodeKind::Branch: return "branch";
    case NodeKind::Join: return "join";
    case NodeKind::Noop: return "noop";
  }
  return "?";
}

struct CfgNode {
  NodeKind kind = NodeKind::Noop;
  SourceLoc loc;
  std::optional<HalCall> event;  // Event
  std::string callee;            // Call: user function; Noop: external callee, if any
  // Branch: {taken, not taken}. For loop branches `taken` enters the body.
  std::vector<NodeId> successors;
  bool loop = false;  // Branch guarding a loop body

  friend bool operator==(const CfgNode&, const CfgNode&) = default;
};

struct FunctionCfg {
  std::string name;
  NodeId entry = 0;
  NodeId exit = 0;
  std::vector<CfgNode> nodes;

  friend bool operator==(const FunctionCfg&, const FunctionCfg&) = default;
};

struct Diagnostic {
  SourceLoc loc;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

struct Cfg {
  std::vector<FunctionCfg> functions;  // source order
  std::size_t main = 0;
  std::vector<Diagnostic> warnings;

  const FunctionCfg* find(std::string_view name) const {
    for (const auto& f : functions)
      if (f.name == name) return &f;
    return nullptr;
  }
  const FunctionCfg& main_function() const { return functions.at(main); }

  friend bool operator==(const Cfg&, const Cfg&) = default;
};

struct LowerOptions {
  // An ioctl whose request constant the catalog does not know is a warning
  // (the call is lowered to a noop) unless this is set.
  bool unknown_request_is_error = false;
};

namespace detail {

class FunctionLowering {
public:
  FunctionLowering(const frontend::FunctionDef& fn, const std::set<std::string>& hal_functions,
                   const std::set<std::string>& requests, const std::set<std::string>& user_functions,
                   const LowerOptions& options, std::vector<Diagnostic>& warnings)
      : fn_(fn),
        hal_functions_(hal_functions),
        requests_(requests),
        user_functions_(user_functions),
        options_(options),
        warnings_(warnings) {}

  FunctionCfg run() {
    out_.name = fn_.name;
    out_.entry = add(NodeKind::Entry, fn_.loc);
    out_.exit = add(NodeKind::Exit, fn_.end_loc);
    cur_ = out_.entry;
    stmt(fn_.body);
    if (cur_) edge(*cur_, out_.exit);
    prune();
    return std::move(out_);
  }

private:
  NodeId add(NodeKind kind, SourceLoc loc) {
    CfgNode n;
    n.kind = kind;
    n.loc = loc;
    out_.nodes.push_back(std::move(n));
    return out_.nodes.size() - 1;
  }

  void edge(NodeId from, NodeId to) { out_.nodes[from].successors.push_back(to); }

  // Appends a node after the current tail. Code after a return has no tail;
  // its nodes are left without predecessors and pruned.
  NodeId append(NodeKind kind, SourceLoc loc) {
    const NodeId id = add(kind, loc);
    if (cur_) edge(*cur_, id);
    cur_ = id;
    return id;
  }

  // Lowers one arm of `branch`, then routes its fall-through to `join`.
  template <class Body>
  void arm(NodeId branch, NodeId join, Body&& body) {
    const std::size_t before = out_.nodes[branch].successors.size();
    cur_ = branch;
    body();
    if (cur_ == branch && out_.nodes[branch].successors.size() == before) {
      edge(branch, join);
    } else if (cur_) {
      edge(*cur_, join);
    }
  }

  void call(const frontend::Expr& e) {
    for (const auto& arg : e.children) expr(arg);
    if (hal_functions_.contains(e.text)) {
      HalCall c{e.text, std::nullopt};
      if (e.text == kRequestDispatchFunction) {
        if (!requests_.contains(*e.request)) {
          const std::string msg = "ioctl request '" + *e.request + "' is not declared in the catalog";
          if (options_.unknown_request_is_error) throw SyntaxError(e.loc, msg);
          warnings_.push_back({e.loc, msg + "; call ignored"});
          append(NodeKind::Noop, e.loc);
          out_.nodes[*cur_].callee = e.text;
          return;
        }
        c.request = e.request;
      }
      append(NodeKind::Event, e.loc);
      out_.nodes[*cur_].event = std::move(c);
    } else if (user_functions_.contains(e.text)) {
      append(NodeKind::Call, e.loc);
      out_.nodes[*cur_].callee = e.text;
    } else {
      append(NodeKind::Noop, e.loc);
      out_.nodes[*cur_].callee = e.text;
    }
  }

  // True if lowering `e` adds at least one node.
  bool lowers_to_nodes(const frontend::Expr& e) const {
    if (e.kind == frontend::Expr::Kind::Call) return true;
    return std::any_of(e.children.begin(), e.children.end(),
                       [this](const auto& c) { return lowers_to_nodes(c); });
  }

  void expr(const frontend::Expr& e) {
    using K = frontend::Expr::Kind;
    switch (e.kind) {
      case K::Call:
        call(e);
        return;
      case K::LogicalAnd:
      case K::LogicalOr:
        expr(e.children[0]);
        if (lowers_to_nodes(e.children[1])) {
          const NodeId b = append(NodeKind::Branch, e.loc);
          const NodeId j = add(NodeKind::Join, e.loc);
          arm(b, j, [&] { expr(e.children[1]); });
          arm(b, j, [] {});
          cur_ = j;
        }
        return;
      case K::Conditional:
        expr(e.children[0]);
        if (lowers_to_nodes(e.children[1]) || lowers_to_nodes(e.children[2])) {
          const NodeId b = append(NodeKind::Branch, e.loc);
          const NodeId j = add(NodeKind::Join, e.loc);
          arm(b, j, [&] { expr(e.children[1]); });
          arm(b, j, [&] { expr(e.children[2]); });
          cur_ = j;
        }
        return;
      default:
        for (const auto& c : e.children) expr(c);
    }
  }

  void stmt(const frontend::Stmt& s) {
    using K = frontend::Stmt::Kind;
    switch (s.kind) {
      case K::Empty:
        return;
      case K::Decl:
        for (const auto& d : s.decls)
          if (d.init) expr(*d.init);
        return;
      case K::Expr:
        expr(*s.expr);
        return;
      case K::Block:
        for (const auto& c : s.body) stmt(c);
        return;
      case K::Return:
        if (s.expr) expr(*s.expr);
        if (cur_) edge(*cur_, out_.exit);
        cur_.reset();
        return;
      case K::If: {
        expr(*s.expr);
        const NodeId b = append(NodeKind::Branch, s.loc);
        const NodeId j = add(NodeKind::Join, s.loc);
        arm(b, j, [&] { stmt(s.body[0]); });
        arm(b, j, [&] {
          if (s.body.size() > 1) stmt(s.body[1]);
        });
        cur_ = j;
        return;
      }
      case K::While:
      case K::For: {
        for (const auto& i : s.init) stmt(i);
        const NodeId head = append(NodeKind::Join, s.loc);
        if (s.expr) expr(*s.expr);
        const NodeId b = append(NodeKind::Branch, s.loc);
        out_.nodes[b].loop = true;
        arm(b, head, [&] {
          stmt(s.body[0]);
          if (s.step) expr(*s.step);
        });
        cur_ = b;
        return;
      }
    }
  }

  // Drops nodes unreachable from entry and renumbers the rest in creation
  // order. Exit is kept even if unreachable.
  void prune() {
    std::vector<bool> live(out_.nodes.size(), false);
    std::vector<NodeId> stack{out_.entry};
    live[out_.entry] = true;
    live[out_.exit] = true;
    while (!stack.empty()) {
      const NodeId n = stack.back();
      stack.pop_back();
      for (NodeId s : out_.nodes[n].successors)
        if (!live[s]) {
          live[s] = true;
          stack.push_back(s);
        }
    }
    std::vector<NodeId> remap(out_.nodes.size(), 0);
    std::vector<CfgNode> kept;
    for (NodeId i = 0; i < out_.nodes.size(); ++i) {
      if (!live[i]) continue;
      remap[i] = kept.size();
      kept.push_back(std::move(out_.nodes[i]));
    }
    for (auto& n : kept)
      for (auto& s : n.successors) s = remap[s];
    out_.entry = remap[out_.entry];
    out_.exit = remap[out_.exit];
    out_.nodes = std::move(kept);
  }

  const frontend::FunctionDef& fn_;
  const std::set<std::string>& hal_functions_;
  const std::set<std::string>& requests_;
  const std::set<std::string>& user_functions_;
  const LowerOptions& options_;
  std::vector<Diagnostic>& warnings_;
  FunctionCfg out_;
  std::optional<NodeId> cur_;
};

}  // namespace detail

// Lowers every function of `ast`. Calls to catalog HAL functions become
// events, calls to functions defined in the program become call nodes, and
// all other calls become noops.
inline Cfg lower_to_cfg(const frontend::Ast& ast, const Catalog& catalog,
                        const LowerOptions& options = {}) {
  const auto hal = catalog.functions();
  const auto requests = catalog.requests();
  std::set<std::string> user;
  for (const auto& f : ast.functions) {
    if (hal.contains(f.name))
      throw UnsupportedProgram(to_string(f.loc) + ": program defines HAL function '" + f.name + "'");
    user.insert(f.name);
  }
  Cfg cfg;
  const auto main_it = std::find_if(ast.functions.begin(), ast.functions.end(),
                                    [](const auto& f) { return f.name == "main"; });
  if (main_it == ast.functions.end()) throw UnsupportedProgram("program has no 'main' function");
  cfg.main = static_cast<std::size_t>(main_it - ast.functions.begin());
  for (const auto& f : ast.functions)
    cfg.functions.push_back(detail::FunctionLowering(f, hal, requests, user, options, cfg.warnings).run());
  return cfg;
}

inline Cfg build_cfg(std::string_view source, const Catalog& catalog, const LowerOptions& options = {}) {
  return lower_to_cfg(frontend::parse_program(source), catalog, options);
}

}  // namespace halcheck
