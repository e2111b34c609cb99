#pragma once

// The shipped case-study programs (fixtures/*.c, compiled in) and a seeded
// generator of random mini-C programs for property tests.

#include <cstdint>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "halcheck/catalog.hpp"
#include "halcheck/generated/fixture_data.hpp"
#include "halcheck/generated/fixture_manifest.hpp"

namespace halcheck {

struct FixturePair {
  std::string name;
  std::string faulty_file;
  std::string repaired_file;
  std::string_view faulty_source;
  std::string_view repaired_source;
  std::set<std::string> expected_violated_faulty;
  std::set<std::string> expected_violated_repaired;
};

namespace detail {

inline std::string_view embedded_fixture(std::string_view file) {
  for (const auto& [name, text] : generated::fixture_files)
    if (name == file) return text;
  throw Error("fixture manifest names unknown file '" + std::string(file) + "'");
}

}  // namespace detail

// Parses the fixture manifest: `pair version file violated` per line, where
// violated is a comma-separated id list or `-`.
inline std::vector<FixturePair> parse_fixture_manifest(std::string_view text) {
  std::vector<FixturePair> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string pair, version, file, violated, extra;
    if (!(fields >> pair)) continue;
    if (!(fields >> version >> file >> violated) || (fields >> extra))
      throw SyntaxError({line_no, 1}, "expected: pair version file violated");
    std::set<std::string> ids;
    if (violated != "-") {
      std::istringstream list(violated);
      for (std::string id; std::getline(list, id, ',');) ids.insert(id);
    }
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& p) { return p.name == pair; });
    if (it == out.end()) {
      out.push_back(FixturePair{pair, "", "", {}, {}, {}, {}});
      it = out.end() - 1;
    }
    if (version == "faulty") {
      it->faulty_file = file;
      it->faulty_source = detail::embedded_fixture(file);
      it->expected_violated_faulty = std::move(ids);
    } else if (version == "repaired") {
      it->repaired_file = file;
      it->repaired_source = detail::embedded_fixture(file);
      it->expected_violated_repaired = std::move(ids);
    } else {
      throw SyntaxError({line_no, 1}, "version must be 'faulty' or 'repaired'");
    }
  }
  for (const auto& p : out)
    if (p.faulty_file.empty() || p.repaired_file.empty())
      throw Error("fixture pair '" + p.name + "' needs both versions");
  return out;
}

inline const std::vector<FixturePair>& builtin_fixtures() {
  static const std::vector<FixturePair> pairs = parse_fixture_manifest(generated::fixture_manifest);
  return pairs;
}

struct GeneratorLimits {
  int max_calls = 12;      // call sites across the whole program
  int max_depth = 3;       // statement nesting
  int max_loops = 0;       // 0 keeps every CFG acyclic
  int max_helpers = 2;     // user functions besides main
  int event_kinds = 6;     // distinct HAL calls drawn from the spidev catalog
};

namespace detail {

class ProgramGenerator {
public:
  ProgramGenerator(std::uint64_t seed, const GeneratorLimits& limits) : rng_(seed), limits_(limits) {
    std::vector<HalCall> pool;
    for (const auto& d : builtin_spidev_catalog().dependencies()) {
      for (const auto& c : {d.antecedent, d.consequent})
        if (std::find(pool.begin(), pool.end(), c) == pool.end()) pool.push_back(c);
    }
    const int kinds = std::clamp(limits.event_kinds, 1, static_cast<int>(pool.size()));
    while (static_cast<int>(events_.size()) < kinds) {
      const auto pick = pool[pick_index(pool.size())];
      if (std::find(events_.begin(), events_.end(), pick) == events_.end()) events_.push_back(pick);
    }
    calls_left_ = std::max(1, limits.max_calls);
    loops_left_ = std::max(0, limits.max_loops);
  }

  std::string run() {
    const int helpers = limits_.max_helpers > 0 ? static_cast<int>(pick_index(limits_.max_helpers + 1)) : 0;
    std::string out = "/* generated */\n";
    // Helper i only calls helpers with a larger index, so there is no recursion.
    for (int h = helpers; h >= 1; --h) {
      helper_floor_ = h + 1;
      helpers_ = helpers;
      out += "static int helper" + std::to_string(h) + "(int fd)\n{\n";
      out += block(1, 1 + static_cast<int>(pick_index(3)));
      out += "    return 0;\n}\n\n";
    }
    helper_floor_ = 1;
    helpers_ = helpers;
    out += "int main(void)\n{\n    int fd = 0;\n    int c = 0;\n";
    out += block(1, 1 + static_cast<int>(pick_index(5)));
    out += "    return 0;\n}\n";
    return out;
  }

private:
  std::size_t pick_index(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  bool chance(int percent) { return static_cast<int>(rng_() % 100) < percent; }

  static std::string pad(int depth) { return std::string(static_cast<std::size_t>(depth) * 4, ' '); }

  std::string hal_expr(const HalCall& call) {
    if (call.function == "open") return "open(\"/dev/spidev0.0\", 2)";
    if (call.function == "close") return "close(fd)";
    if (call.function == "read") return "read(fd, buf, 4)";
    if (call.function == "write") return "write(fd, buf, 4)";
    return "ioctl(fd, " + *call.request + ", &arg)";
  }

  std::string random_hal() {
    --calls_left_;
    return hal_expr(events_[pick_index(events_.size())]);
  }

  std::string block(int depth, int statements) {
    std::string out;
    for (int i = 0; i < statements && calls_left_ > 0; ++i) out += statement(depth);
    return out;
  }

  std::string statement(int depth) {
    const std::string p = pad(depth);
    const bool can_nest = depth < limits_.max_depth && calls_left_ > 1;
    const bool can_call_helper = helper_floor_ <= helpers_;
    const int roll = static_cast<int>(pick_index(100));
    if (roll < 40) {
      const std::string e = random_hal();
      if (chance(25)) return p + "c = " + e + ";\n";
      return p + e + ";\n";
    }
    if (roll < 50) {
      if (chance(50)) return p + "c = c + 1;\n";
      --calls_left_;
      return p + "printf(\"%d\\n\", c);\n";
    }
    if (roll < 60 && can_call_helper) {
      --calls_left_;
      const int target = helper_floor_ + static_cast<int>(pick_index(helpers_ - helper_floor_ + 1));
      return p + "helper" + std::to_string(target) + "(fd);\n";
    }
    if (roll < 80 && can_nest) {
      std::string cond = "c";
      if (chance(25)) cond = "c && " + random_hal() + " == 0";
      std::string out = p + "if (" + cond + ") {\n" + block(depth + 1, 1 + static_cast<int>(pick_index(3)));
      if (chance(15)) out += pad(depth + 1) + "return 1;\n";
      out += p + "}";
      if (chance(50)) out += " else {\n" + block(depth + 1, 1 + static_cast<int>(pick_index(2))) + p + "}";
      return out + "\n";
    }
    if (roll < 92 && can_nest && loops_left_ > 0) {
      --loops_left_;
      if (chance(50)) {
        std::string out = p + "while (c) {\n" + block(depth + 1, 1 + static_cast<int>(pick_index(3)));
        return out + p + "}\n";
      }
      std::string out = p + "for (c = 0; c < 4; c++) {\n" + block(depth + 1, 1 + static_cast<int>(pick_index(3)));
      return out + p + "}\n";
    }
    return p + random_hal() + ";\n";
  }

  std::mt19937_64 rng_;
  GeneratorLimits limits_;
  std::vector<HalCall> events_;
  int calls_left_ = 0;
  int loops_left_ = 0;
  int helper_floor_ = 1;
  int helpers_ = 0;
};

}  // namespace detail

// Deterministic in `seed` for a given build.
inline std::string generate_random_program(std::uint64_t seed, const GeneratorLimits& limits = {}) {
  return detail::ProgramGenerator(seed, limits).run();
}

}  // namespace halcheck
