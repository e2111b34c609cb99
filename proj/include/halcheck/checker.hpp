#pragma once

// Whole-program precedence checking.
//
// User-defined calls are inlined into one graph rooted at main's entry
// (recursion is rejected). For each dependency a worklist fixed point
// computes, per node, which monitor states {0, 1} can reach it. A consequent
// event reachable in state 0 is a violation. The counterexample is a
// shortest path in the node x state product graph from (entry, 0) to a
// violating configuration; equal-length paths are ordered lexicographically
// by the source locations of their nodes.
//
// Branch conditions are not evaluated, so a reported violation may lie on a
// data-infeasible path (may-violate semantics).

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "halcheck/catalog.hpp"
#include "halcheck/frontend/cfg.hpp"
#include "halcheck/monitor.hpp"

namespace halcheck {

struct CounterexampleStep {
  SourceLoc loc;
  HalCall call;

  friend bool operator==(const CounterexampleStep&, const CounterexampleStep&) = default;
};

struct Verdict {
  std::string dep_id;
  Status status = Status::Satisfied;
  std::optional<std::vector<CounterexampleStep>> counterexample;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

inline Trace events_of(const std::vector<CounterexampleStep>& steps) {
  Trace t;
  t.reserve(steps.size());
  for (const auto& s : steps) t.push_back(s.call);
  return t;
}

// main with every reachable user call expanded in place.
struct ProgramGraph {
  struct Node {
    NodeKind kind = NodeKind::Noop;
    SourceLoc loc;
    std::optional<HalCall> event;
    std::vector<std::size_t> successors;
  };

  std::vector<Node> nodes;
  std::size_t entry = 0;
  std::size_t exit = 0;
};

namespace detail {

inline constexpr std::size_t kMaxInlinedNodes = 4'000'000;

// Throws UnsupportedProgram naming the first call cycle reachable from main.
inline void reject_recursion(const Cfg& cfg) {
  enum class Color { White, Grey, Black };
  std::map<std::string, Color> color;
  std::vector<std::string> stack;

  auto visit = [&](auto&& self, const FunctionCfg& fn) -> void {
    color[fn.name] = Color::Grey;
    stack.push_back(fn.name);
    for (const auto& n : fn.nodes) {
      if (n.kind != NodeKind::Call) continue;
      const FunctionCfg* callee = cfg.find(n.callee);
      if (!callee) continue;
      const Color c = color[callee->name];
      if (c == Color::Grey) {
        std::string cycle;
        auto it = std::find(stack.begin(), stack.end(), callee->name);
        for (; it != stack.end(); ++it) cycle += *it + " -> ";
        throw UnsupportedProgram("recursion is not supported: " + cycle + callee->name);
      }
      if (c == Color::White) self(self, *callee);
    }
    stack.pop_back();
    color[fn.name] = Color::Black;
  };
  visit(visit, cfg.main_function());
}

class Inliner {
public:
  explicit Inliner(const Cfg& cfg) : cfg_(cfg) {}

  ProgramGraph run() {
    const auto [entry, exit] = instantiate(cfg_.main_function());
    out_.entry = entry;
    out_.exit = exit;
    return std::move(out_);
  }

private:
  std::pair<std::size_t, std::size_t> instantiate(const FunctionCfg& fn) {
    const std::size_t base = out_.nodes.size();
    if (base + fn.nodes.size() > kMaxInlinedNodes)
      throw UnsupportedProgram("program is too large after inlining user calls");
    for (const auto& n : fn.nodes) {
      ProgramGraph::Node copy;
      copy.kind = n.kind;
      copy.loc = n.loc;
      copy.event = n.event;
      for (NodeId s : n.successors) copy.successors.push_back(base + s);
      out_.nodes.push_back(std::move(copy));
    }
    for (NodeId i = 0; i < fn.nodes.size(); ++i) {
      const auto& n = fn.nodes[i];
      if (n.kind != NodeKind::Call) continue;
      const auto [callee_entry, callee_exit] = instantiate(*cfg_.find(n.callee));
      auto& call = out_.nodes[base + i];
      out_.nodes[callee_exit].successors = std::move(call.successors);
      call.successors = {callee_entry};
    }
    return {base + fn.entry, base + fn.exit};
  }

  const Cfg& cfg_;
  ProgramGraph out_;
};

}  // namespace detail

inline ProgramGraph inline_program(const Cfg& cfg) {
  detail::reject_recursion(cfg);
  return detail::Inliner(cfg).run();
}

enum class CheckAllStrategy {
  Auto,            // combined pass for catalogs of up to 16 entries
  PerDependency,
  Combined,
};

class Checker {
public:
  static constexpr std::size_t kCombinedLimit = 16;

  explicit Checker(const Cfg& cfg) : graph_(inline_program(cfg)) { build_predecessors(); }

  const ProgramGraph& graph() const { return graph_; }

  Verdict check(const TemporalDependency& dep) const {
    Verdict v{dep.id, Status::Satisfied, std::nullopt};
    const auto reach = reachable_states(dep);
    bool violated = false;
    for (std::size_t n = 0; n < graph_.nodes.size(); ++n)
      if (is_violation_site(n, 0, dep) && (reach[n] & kState0)) violated = true;
    if (violated) {
      v.status = Status::Violated;
      v.counterexample = counterexample(dep);
    }
    return v;
  }

  std::vector<Verdict> check_all(const Catalog& catalog,
                                 CheckAllStrategy strategy = CheckAllStrategy::Auto) const {
    const auto deps = catalog.dependencies();
    if (strategy == CheckAllStrategy::Auto)
      strategy = deps.size() <= kCombinedLimit ? CheckAllStrategy::Combined
                                               : CheckAllStrategy::PerDependency;
    std::vector<Verdict> out;
    out.reserve(deps.size());
    if (strategy == CheckAllStrategy::PerDependency) {
      for (const auto& d : deps) out.push_back(check(d));
      return out;
    }
    if (deps.size() > kCombinedLimit)
      throw Error("combined check supports at most 16 dependencies");
    const auto violated = combined_pass(deps);
    for (std::size_t k = 0; k < deps.size(); ++k) {
      Verdict v{deps[k].id, Status::Satisfied, std::nullopt};
      if (violated[k]) {
        v.status = Status::Violated;
        v.counterexample = counterexample(deps[k]);
      }
      out.push_back(std::move(v));
    }
    return out;
  }

private:
  static constexpr std::uint8_t kState0 = 1;
  static constexpr std::uint8_t kState1 = 2;

  void build_predecessors() {
    preds_.assign(graph_.nodes.size(), {});
    for (std::size_t n = 0; n < graph_.nodes.size(); ++n)
      for (std::size_t s : graph_.nodes[n].successors) preds_[s].push_back(n);
  }

  bool is_violation_site(std::size_t node, int state, const TemporalDependency& dep) const {
    const auto& e = graph_.nodes[node].event;
    return state == 0 && e && *e == dep.consequent;
  }

  // Monitor state after executing `node` in `state`.
  int after(std::size_t node, int state, const TemporalDependency& dep) const {
    const auto& e = graph_.nodes[node].event;
    return (e && *e == dep.antecedent) ? 1 : state;
  }

  // Least fixed point of the sets of monitor states on entry to each node.
  std::vector<std::uint8_t> reachable_states(const TemporalDependency& dep) const {
    std::vector<std::uint8_t> in(graph_.nodes.size(), 0);
    std::deque<std::size_t> work{graph_.entry};
    in[graph_.entry] = kState0;
    while (!work.empty()) {
      const std::size_t n = work.front();
      work.pop_front();
      std::uint8_t out = in[n];
      const auto& e = graph_.nodes[n].event;
      if (e && *e == dep.antecedent && out) out = kState1;
      for (std::size_t s : graph_.nodes[n].successors) {
        if ((in[s] | out) != in[s]) {
          in[s] |= out;
          work.push_back(s);
        }
      }
    }
    return in;
  }

  // Propagates sets of monitor-state vectors (bit k = dependency k has seen
  // its antecedent) for all dependencies at once.
  std::vector<bool> combined_pass(std::span<const TemporalDependency> deps) const {
    std::vector<std::set<std::uint16_t>> in(graph_.nodes.size());
    std::vector<bool> violated(deps.size(), false);
    std::deque<std::size_t> work{graph_.entry};
    std::vector<std::set<std::uint16_t>> pending(graph_.nodes.size());
    pending[graph_.entry].insert(0);
    while (!work.empty()) {
      const std::size_t n = work.front();
      work.pop_front();
      std::set<std::uint16_t> fresh;
      fresh.swap(pending[n]);
      const auto& e = graph_.nodes[n].event;
      std::uint16_t sets = 0;
      if (e)
        for (std::size_t k = 0; k < deps.size(); ++k) {
          if (*e == deps[k].antecedent) sets |= static_cast<std::uint16_t>(1u << k);
        }
      for (std::uint16_t v : fresh) {
        if (!in[n].insert(v).second) continue;
        if (e)
          for (std::size_t k = 0; k < deps.size(); ++k)
            if (*e == deps[k].consequent && !(v & (1u << k))) violated[k] = true;
        const std::uint16_t next = v | sets;
        for (std::size_t s : graph_.nodes[n].successors) {
          if (in[s].contains(next) || pending[s].contains(next)) continue;
          if (pending[s].empty()) work.push_back(s);
          pending[s].insert(next);
        }
      }
    }
    return violated;
  }

  std::vector<CounterexampleStep> counterexample(const TemporalDependency& dep) const {
    constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
    const std::size_t count = graph_.nodes.size() * 2;
    auto id = [](std::size_t node, int state) { return node * 2 + static_cast<std::size_t>(state); };

    // Forward distances from (entry, 0); violation configurations are not expanded.
    std::vector<std::size_t> from(count, kInf);
    std::deque<std::size_t> q{id(graph_.entry, 0)};
    from[q.front()] = 0;
    std::size_t best = kInf;
    while (!q.empty()) {
      const std::size_t p = q.front();
      q.pop_front();
      const std::size_t node = p / 2;
      const int state = static_cast<int>(p % 2);
      if (is_violation_site(node, state, dep)) {
        best = std::min(best, from[p]);
        continue;
      }
      const int next = after(node, state, dep);
      for (std::size_t s : graph_.nodes[node].successors) {
        const std::size_t t = id(s, next);
        if (from[t] == kInf) {
          from[t] = from[p] + 1;
          q.push_back(t);
        }
      }
    }

    // Backward distances to the nearest violation configuration.
    std::vector<std::size_t> to(count, kInf);
    for (std::size_t n = 0; n < graph_.nodes.size(); ++n)
      if (is_violation_site(n, 0, dep) && from[id(n, 0)] != kInf) {
        to[id(n, 0)] = 0;
        q.push_back(id(n, 0));
      }
    while (!q.empty()) {
      const std::size_t p = q.front();
      q.pop_front();
      const std::size_t node = p / 2;
      const int state = static_cast<int>(p % 2);
      for (std::size_t pred : preds_[node]) {
        for (int ps = 0; ps < 2; ++ps) {
          if (after(pred, ps, dep) != state || is_violation_site(pred, ps, dep)) continue;
          const std::size_t t = id(pred, ps);
          if (to[t] == kInf) {
            to[t] = to[p] + 1;
            q.push_back(t);
          }
        }
      }
    }

    // Walk shortest paths, keeping only the lexicographically least locations.
    std::vector<std::size_t> frontier{id(graph_.entry, 0)};
    std::map<std::size_t, std::size_t> parent;
    for (std::size_t remaining = best; remaining > 0; --remaining) {
      std::map<std::size_t, std::size_t> reached;  // node -> parent
      std::optional<SourceLoc> least;
      for (std::size_t p : frontier) {
        const int next = after(p / 2, static_cast<int>(p % 2), dep);
        for (std::size_t s : graph_.nodes[p / 2].successors) {
          const std::size_t t = id(s, next);
          if (to[t] != remaining - 1 || from[t] != best - remaining + 1) continue;
          const SourceLoc loc = graph_.nodes[s].loc;
          if (!least || loc < *least) {
            least = loc;
            reached.clear();
          }
          if (loc == *least) reached.emplace(t, p);
        }
      }
      frontier.clear();
      for (const auto& [t, p] : reached) {
        frontier.push_back(t);
        parent.emplace(t, p);
      }
    }

    std::vector<CounterexampleStep> steps;
    for (std::size_t p = frontier.front();; p = parent.at(p)) {
      const auto& n = graph_.nodes[p / 2];
      if (n.event) steps.push_back({n.loc, *n.event});
      if (p == id(graph_.entry, 0)) break;
    }
    std::reverse(steps.begin(), steps.end());
    return steps;
  }

  ProgramGraph graph_;
  std::vector<std::vector<std::size_t>> preds_;
};

inline Verdict check(const Cfg& cfg, const TemporalDependency& dep) { return Checker(cfg).check(dep); }

inline std::vector<Verdict> check_all(const Cfg& cfg, const Catalog& catalog) {
  return Checker(cfg).check_all(catalog);
}

}  // namespace halcheck
