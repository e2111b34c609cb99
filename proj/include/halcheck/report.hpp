#pragma once

// Text and JSON renderings of check, oracle and relevance results.

#include <nlohmann/json.hpp>

#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "halcheck/catalog.hpp"
#include "halcheck/checker.hpp"
#include "halcheck/relevance.hpp"

namespace halcheck::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSemanticsNote =
    "note: may-violate semantics; branch conditions are not evaluated, so a violation may lie on an "
    "infeasible path";

class Style {
public:
  explicit Style(bool color) : color_(color) {}

  std::string status(Status s) const { return paint(to_string(s), s == Status::Violated ? "31" : "32"); }
  std::string relevance(RelevanceStatus s) const {
    const char* code = s == RelevanceStatus::Relevant               ? "1;33"
                       : s == RelevanceStatus::DegenerateRegression ? "1;31"
                                                                    : "2";
    return paint(to_string(s), code);
  }
  std::string bold(const std::string& s) const { return paint(s, "1"); }

private:
  std::string paint(const std::string& s, const char* code) const {
    if (!color_) return s;
    return "\x1b[" + std::string(code) + "m" + s + "\x1b[0m";
  }

  bool color_;
};

inline std::string pad_right(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

inline Json counterexample_json(const std::string& file, const std::vector<CounterexampleStep>& steps) {
  Json out = Json::array();
  for (const auto& s : steps)
    out.push_back({{"file", file}, {"line", s.loc.line}, {"col", s.loc.column}, {"call", to_string(s.call)}});
  return out;
}

inline void render_counterexample(std::ostream& os, const std::string& file,
                                  const std::vector<CounterexampleStep>& steps) {
  for (const auto& s : steps)
    os << "    " << file << ":" << s.loc.line << ":" << s.loc.column << "  " << to_string(s.call) << "\n";
}

struct ProgramInfo {
  std::string path;
  std::string sha256;
};

// --- check ---------------------------------------------------------------

inline std::vector<std::string> violated_ids(const std::vector<Verdict>& verdicts) {
  std::vector<std::string> out;
  for (const auto& v : verdicts)
    if (v.status == Status::Violated) out.push_back(v.dep_id);
  return out;
}

inline Json check_json(const Catalog& catalog, const ProgramInfo& program,
                       const std::vector<Verdict>& verdicts) {
  Json out;
  out["catalog"] = catalog.hal_name();
  out["program"] = {{"path", program.path}, {"sha256", program.sha256}};
  out["semantics"] = "may-violate";
  out["verdicts"] = Json::array();
  for (const auto& v : verdicts) {
    const auto* dep = catalog.find(v.dep_id);
    Json entry;
    entry["dep"] = v.dep_id;
    entry["antecedent"] = to_string(dep->antecedent);
    entry["consequent"] = to_string(dep->consequent);
    entry["status"] = to_string(v.status);
    if (v.counterexample) entry["counterexample"] = counterexample_json(program.path, *v.counterexample);
    out["verdicts"].push_back(std::move(entry));
  }
  out["violated"] = violated_ids(verdicts);
  return out;
}

inline std::string check_text(const Catalog& catalog, const ProgramInfo& program,
                              const std::vector<Verdict>& verdicts, const Style& style) {
  std::ostringstream os;
  os << style.bold("check " + program.path) << " (catalog " << catalog.hal_name() << ", "
     << verdicts.size() << " dependencies)\n";
  os << kSemanticsNote << "\n\n";
  for (const auto& v : verdicts) {
    const auto* dep = catalog.find(v.dep_id);
    os << "  " << pad_right(v.dep_id, 5) << pad_right(to_string(dep->antecedent) + " < " +
                                                          to_string(dep->consequent), 44)
       << style.status(v.status) << "\n";
  }
  const auto violated = violated_ids(verdicts);
  os << "\n";
  if (violated.empty()) {
    os << "no violations\n";
    return os.str();
  }
  os << "violated:";
  for (const auto& id : violated) os << " " << id;
  os << "\n";
  for (const auto& v : verdicts) {
    if (!v.counterexample) continue;
    os << "\n  counterexample for " << to_string(*catalog.find(v.dep_id)) << "\n";
    render_counterexample(os, program.path, *v.counterexample);
  }
  return os.str();
}

// --- oracle --------------------------------------------------------------

struct OracleResult {
  std::string dep_id;
  Status status;
};

inline Json oracle_json(const Catalog& catalog, const ProgramInfo& program, int loop_bound,
                        std::size_t trace_count, const std::vector<OracleResult>& results) {
  Json out;
  out["catalog"] = catalog.hal_name();
  out["program"] = {{"path", program.path}, {"sha256", program.sha256}};
  out["loop_bound"] = loop_bound;
  out["traces"] = trace_count;
  out["verdicts"] = Json::array();
  std::vector<std::string> violated;
  for (const auto& r : results) {
    out["verdicts"].push_back({{"dep", r.dep_id}, {"status", to_string(r.status)}});
    if (r.status == Status::Violated) violated.push_back(r.dep_id);
  }
  out["violated"] = violated;
  return out;
}

inline std::string oracle_text(const Catalog& catalog, const ProgramInfo& program, int loop_bound,
                               std::size_t trace_count, const std::vector<OracleResult>& results,
                               const Style& style) {
  std::ostringstream os;
  os << style.bold("oracle " + program.path) << " (catalog " << catalog.hal_name() << ", loop bound "
     << loop_bound << ", " << trace_count << " distinct traces)\n\n";
  std::vector<std::string> violated;
  for (const auto& r : results) {
    const auto* dep = catalog.find(r.dep_id);
    os << "  " << pad_right(r.dep_id, 5)
       << pad_right(to_string(dep->antecedent) + " < " + to_string(dep->consequent), 44)
       << style.status(r.status) << "\n";
    if (r.status == Status::Violated) violated.push_back(r.dep_id);
  }
  os << "\n";
  if (violated.empty()) {
    os << "no violations\n";
  } else {
    os << "violated:";
    for (const auto& id : violated) os << " " << id;
    os << "\n";
  }
  return os.str();
}

// --- relevance -----------------------------------------------------------

// The counterexample attached to an entry: the faulty version's if it
// violates the dependency, otherwise the repaired version's.
inline std::optional<Json> entry_counterexample(const RelevanceReport& r, const RelevanceEntry& e) {
  if (e.faulty.counterexample) return counterexample_json(r.faulty_program.path, *e.faulty.counterexample);
  if (e.repaired.counterexample)
    return counterexample_json(r.repaired_program.path, *e.repaired.counterexample);
  return std::nullopt;
}

inline Json relevance_json(const RelevanceReport& r) {
  Json out;
  out["catalog"] = r.catalog_name;
  out["faulty"] = {{"path", r.faulty_program.path}, {"sha256", r.faulty_program.sha256}};
  out["repaired"] = {{"path", r.repaired_program.path}, {"sha256", r.repaired_program.sha256}};
  out["entries"] = Json::array();
  for (const auto& e : r.entries) {
    Json entry;
    entry["dep"] = e.dep_id;
    entry["faulty_status"] = to_string(e.faulty.status);
    entry["repaired_status"] = to_string(e.repaired.status);
    entry["relevance"] = to_string(e.status);
    if (auto cx = entry_counterexample(r, e)) entry["counterexample"] = std::move(*cx);
    out["entries"].push_back(std::move(entry));
  }
  out["relevant"] = r.relevant_set;
  return out;
}

inline std::string relevance_text(const RelevanceReport& r, const Catalog& catalog, const Style& style) {
  std::ostringstream os;
  os << style.bold("relevance") << " (catalog " << r.catalog_name << ", " << r.entries.size()
     << " dependencies)\n";
  os << "  faulty:   " << r.faulty_program.path << "  sha256:" << r.faulty_program.sha256 << "\n";
  os << "  repaired: " << r.repaired_program.path << "  sha256:" << r.repaired_program.sha256 << "\n";
  os << kSemanticsNote << "\n\n";
  os << "  " << pad_right("dep", 5) << pad_right("dependency", 44) << pad_right("faulty", 10)
     << pad_right("repaired", 10) << "relevance\n";
  for (const auto& e : r.entries) {
    const auto* dep = catalog.find(e.dep_id);
    os << "  " << pad_right(e.dep_id, 5)
       << pad_right(to_string(dep->antecedent) + " < " + to_string(dep->consequent), 44)
       << style.status(e.faulty.status) << std::string(10 - std::string(to_string(e.faulty.status)).size(), ' ')
       << style.status(e.repaired.status)
       << std::string(10 - std::string(to_string(e.repaired.status)).size(), ' ') << style.relevance(e.status)
       << "\n";
  }
  os << "\n";
  if (r.relevant_set.empty()) {
    os << "relevant: none\n";
  } else {
    os << "relevant:";
    for (const auto& id : r.relevant_set) os << " " << id;
    os << "\n";
  }
  for (const auto& e : r.entries) {
    if (e.status == RelevanceStatus::DegenerateRegression)
      os << "regression: the repaired version violates " << e.dep_id
         << ", which the faulty version satisfies\n";
  }
  for (const auto& e : r.entries) {
    if (e.status != RelevanceStatus::Relevant && e.status != RelevanceStatus::DegenerateRegression) continue;
    const bool from_faulty = e.status == RelevanceStatus::Relevant;
    const auto& verdict = from_faulty ? e.faulty : e.repaired;
    os << "\n  counterexample for " << to_string(*catalog.find(e.dep_id)) << " in "
       << (from_faulty ? "faulty" : "repaired") << " version\n";
    render_counterexample(os, from_faulty ? r.faulty_program.path : r.repaired_program.path,
                          *verdict.counterexample);
  }
  return os.str();
}

}  // namespace halcheck::report
