#pragma once

// Executes the ghost code of an emitted stub file over an event trace. Reads
// only the emitted text: function headers, `case X:` labels and the three
// annotation forms, in textual order.

#include <map>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "halcheck/catalog.hpp"
#include "halcheck/monitor.hpp"

namespace halcheck::testing {

class GhostProgram {
public:
  explicit GhostProgram(const std::string& text) {
    static const std::regex decl(R"(^/\*@ ghost int (\w+) = 0; \*/$)");
    static const std::regex update(R"(^\s+/\*@ ghost (\w+) = 1; \*/$)");
    static const std::regex check(R"(^\s+/\*@ assert \((\w+) == 1\); \*/$)");
    static const std::regex header(R"(^[A-Za-z_][\w \*]*?\b(\w+)\(.*\)$)");
    static const std::regex label(R"(^\s+case (\w+):$)");
    std::istringstream in(text);
    std::string line;
    std::string function;
    std::optional<std::string> request;
    std::smatch m;
    while (std::getline(in, line)) {
      if (std::regex_match(line, m, decl)) {
        if (!ghosts_.emplace(m[1], 0).second) duplicate_declarations_ = true;
      } else if (std::regex_match(line, m, header)) {
        function = m[1];
        request.reset();
      } else if (std::regex_match(line, m, label)) {
        request = m[1];
      } else if (std::regex_match(line, m, update)) {
        sites_[{function, request}].push_back({Op::Update, m[1]});
      } else if (std::regex_match(line, m, check)) {
        sites_[{function, request}].push_back({Op::Assert, m[1]});
      }
    }
  }

  std::size_t ghost_count() const { return ghosts_.size(); }
  bool has_duplicate_declarations() const { return duplicate_declarations_; }

  std::size_t count(const std::string& ghost, bool updates) const {
    std::size_t n = 0;
    for (const auto& [site, ops] : sites_)
      for (const auto& op : ops)
        if (op.ghost == ghost && (op.kind == Op::Update) == updates) ++n;
    return n;
  }

  // Index of the first failed assert on each ghost variable.
  std::map<std::string, std::size_t> run(const Trace& trace) const {
    std::map<std::string, int> state = ghosts_;
    std::map<std::string, std::size_t> failed;
    for (std::size_t i = 0; i < trace.size(); ++i) {
      auto it = sites_.find({trace[i].function, trace[i].request});
      if (it == sites_.end()) continue;
      for (const auto& op : it->second) {
        if (op.kind == Op::Assert) {
          if (state.at(op.ghost) != 1) failed.emplace(op.ghost, i);
        } else {
          state.at(op.ghost) = 1;
        }
      }
    }
    return failed;
  }

private:
  struct Op {
    enum Kind { Update, Assert } kind;
    std::string ghost;
  };

  std::map<std::string, int> ghosts_;
  std::map<std::pair<std::string, std::optional<std::string>>, std::vector<Op>> sites_;
  bool duplicate_declarations_ = false;
};

}  // namespace halcheck::testing
