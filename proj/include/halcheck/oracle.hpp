#pragma once

// Brute-force reference for the checker: the set of HAL-event traces of all
// paths from main's entry to main's exit, with each loop unrolled at most
// `loop_bound` times per entry. Works on the per-function CFGs without
// inlining. A callee's trace set does not depend on its caller (loop counters
// start fresh in every call), so it is computed once and spliced in at each
// call site; within a function, suffix sets are memoized on (node, loop
// counters). This yields exactly the traces a path-by-path walk would, without
// walking the paths that differ only in branches with no events.
//
// max_paths caps the number of distinct traces held for any program point.

#include <map>
#include <memory>
#include <set>
#include <vector>

#include "halcheck/catalog.hpp"
#include "halcheck/checker.hpp"
#include "halcheck/frontend/cfg.hpp"
#include "halcheck/monitor.hpp"

namespace halcheck {

struct EnumerationConfig {
  int loop_bound = 2;
  std::size_t max_paths = 100'000;
};

namespace detail {

class TraceEnumerator {
public:
  using TraceSet = std::set<Trace>;

  TraceEnumerator(const Cfg& cfg, const EnumerationConfig& config) : cfg_(cfg), config_(config) {
    if (config.loop_bound < 0) throw Error("loop bound must be non-negative");
    if (config.max_paths < 1) throw Error("path cap must be at least 1");
  }

  TraceSet run() {
    reject_recursion(cfg_);
    return traces_of(cfg_.main_function());
  }

private:
  struct State {
    NodeId node;
    std::vector<int> iterations;  // per loop branch node

    friend auto operator<=>(const State&, const State&) = default;
  };
  using Memo = std::map<State, TraceSet>;

  const TraceSet& traces_of(const FunctionCfg& fn) {
    if (auto it = functions_.find(fn.name); it != functions_.end()) return it->second;
    Memo memo;
    TraceSet all = suffixes(fn, State{fn.entry, std::vector<int>(fn.nodes.size(), 0)}, memo);
    return functions_.emplace(fn.name, std::move(all)).first->second;
  }

  void check_cap(const TraceSet& s) const {
    if (s.size() > config_.max_paths)
      throw PathCapExceeded("path enumeration exceeded the cap of " + std::to_string(config_.max_paths) +
                            " distinct traces");
  }

  const TraceSet& suffixes(const FunctionCfg& fn, const State& state, Memo& memo) {
    if (auto it = memo.find(state); it != memo.end()) return it->second;
    const CfgNode& n = fn.nodes[state.node];
    auto next = [&](NodeId s, std::vector<int> iterations) -> const TraceSet& {
      return suffixes(fn, State{s, std::move(iterations)}, memo);
    };
    TraceSet out;
    switch (n.kind) {
      case NodeKind::Exit:
        out.insert(Trace{});
        break;
      case NodeKind::Event:
        for (const auto& t : next(n.successors[0], state.iterations)) {
          Trace u;
          u.reserve(t.size() + 1);
          u.push_back(*n.event);
          u.insert(u.end(), t.begin(), t.end());
          out.insert(std::move(u));
        }
        break;
      case NodeKind::Call: {
        const TraceSet& callee = traces_of(*cfg_.find(n.callee));
        const TraceSet& rest = next(n.successors[0], state.iterations);
        for (const auto& a : callee) {
          for (const auto& b : rest) {
            Trace u = a;
            u.insert(u.end(), b.begin(), b.end());
            out.insert(std::move(u));
          }
          check_cap(out);
        }
        break;
      }
      case NodeKind::Branch: {
        auto exit_arm = state.iterations;
        std::vector<int> body_arm;
        if (n.loop) {
          exit_arm[state.node] = 0;
          if (state.iterations[state.node] < config_.loop_bound) {
            body_arm = state.iterations;
            ++body_arm[state.node];
          }
        } else {
          body_arm = state.iterations;
        }
        out = next(n.successors[1], std::move(exit_arm));
        if (!body_arm.empty()) {
          const TraceSet& taken = next(n.successors[0], std::move(body_arm));
          out.insert(taken.begin(), taken.end());
        }
        break;
      }
      default:
        out = next(n.successors[0], state.iterations);
        break;
    }
    check_cap(out);
    return memo.emplace(state, std::move(out)).first->second;
  }

  const Cfg& cfg_;
  EnumerationConfig config_;
  std::map<std::string, TraceSet> functions_;
};

}  // namespace detail

// Distinct event traces in lexicographic order.
inline std::vector<Trace> enumerate_traces(const Cfg& cfg, const EnumerationConfig& config = {}) {
  auto traces = detail::TraceEnumerator(cfg, config).run();
  return {std::make_move_iterator(traces.begin()), std::make_move_iterator(traces.end())};
}

inline Status oracle_verdict(std::span<const Trace> traces, const TemporalDependency& dep) {
  for (const auto& t : traces)
    if (run_trace(t, dep).status == Status::Violated) return Status::Violated;
  return Status::Satisfied;
}

inline Status oracle_verdict(const Cfg& cfg, const TemporalDependency& dep,
                             const EnumerationConfig& config = {}) {
  const auto traces = enumerate_traces(cfg, config);
  return oracle_verdict(traces, dep);
}

}  // namespace halcheck
