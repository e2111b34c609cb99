#pragma once

// Two-state precedence monitor: one flag per dependency recording whether
// the antecedent has been called. A consequent call while the flag is clear
// is a violation. Same semantics as a ghost variable set at the end of the
// antecedent and asserted at the start of the consequent.

#include <optional>
#include <span>
#include <vector>

#include "halcheck/catalog.hpp"

namespace halcheck {

struct MonitorState {
  bool seen_antecedent = false;

  friend bool operator==(const MonitorState&, const MonitorState&) = default;
};

struct StepResult {
  MonitorState state;
  bool violated = false;
};

inline StepResult step(MonitorState state, const HalCall& event, const TemporalDependency& dep) {
  if (event == dep.consequent && !state.seen_antecedent) return {state, true};
  if (event == dep.antecedent) state.seen_antecedent = true;
  return {state, false};
}

using Trace = std::vector<HalCall>;

enum class Status { Satisfied, Violated };

inline const char* to_string(Status s) { return s == Status::Satisfied ? "satisfied" : "violated"; }

struct TraceVerdict {
  Status status = Status::Satisfied;
  std::optional<std::size_t> violation_index;

  friend bool operator==(const TraceVerdict&, const TraceVerdict&) = default;
};

inline TraceVerdict run_trace(std::span<const HalCall> trace, const TemporalDependency& dep) {
  MonitorState state;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto r = step(state, trace[i], dep);
    if (r.violated) return {Status::Violated, i};
    state = r.state;
  }
  return {};
}

}  // namespace halcheck
