#pragma once

// A dependency is relevant to a failure when the faulty program violates it
// and the repaired program satisfies it.

#include <string>
#include <vector>

#include "halcheck/catalog.hpp"
#include "halcheck/checker.hpp"
#include "halcheck/frontend/cfg.hpp"
#include "halcheck/sha256.hpp"

namespace halcheck {

enum class RelevanceStatus {
  Relevant,
  NotRelevantViolatedInRepaired,
  NotRelevantSatisfiedInBoth,
  DegenerateRegression,  // satisfied in faulty, violated in repaired
};

inline const char* to_string(RelevanceStatus s) {
  switch (s) {
    case RelevanceStatus::Relevant: return "relevant";
    case RelevanceStatus::NotRelevantViolatedInRepaired: return "not_relevant_violated_in_repaired";
    case RelevanceStatus::NotRelevantSatisfiedInBoth: return "not_relevant_satisfied_in_both";
    case RelevanceStatus::DegenerateRegression: return "degenerate_regression";
  }
  return "?";
}

inline RelevanceStatus classify(const Verdict& faulty, const Verdict& repaired) {
  if (faulty.dep_id != repaired.dep_id)
    throw Error("cannot classify verdicts of different dependencies ('" + faulty.dep_id + "' vs '" +
                repaired.dep_id + "')");
  const bool f = faulty.status == Status::Violated;
  const bool r = repaired.status == Status::Violated;
  if (f && !r) return RelevanceStatus::Relevant;
  if (f && r) return RelevanceStatus::NotRelevantViolatedInRepaired;
  if (!f && !r) return RelevanceStatus::NotRelevantSatisfiedInBoth;
  return RelevanceStatus::DegenerateRegression;
}

// A program version under analysis, identified by path and content hash.
struct ProgramVersion {
  std::string path;
  std::string sha256;
  Cfg cfg;
};

// Labels errors with the version ("faulty"/"repaired") they came from.
class VersionError : public Error {
public:
  VersionError(std::string version, const std::string& what)
      : Error(version + ": " + what), version_(std::move(version)) {}
  const std::string& version() const { return version_; }

private:
  std::string version_;
};

inline ProgramVersion load_version(std::string label, std::string path, std::string_view source,
                                   const Catalog& catalog, const LowerOptions& options = {}) {
  try {
    Cfg cfg = build_cfg(source, catalog, options);
    return ProgramVersion{std::move(path), sha256_hex(source), std::move(cfg)};
  } catch (const Error& e) {
    throw VersionError(std::move(label), path + ":" + e.what());
  }
}

struct RelevanceEntry {
  std::string dep_id;
  Verdict faulty;
  Verdict repaired;
  RelevanceStatus status;

  friend bool operator==(const RelevanceEntry&, const RelevanceEntry&) = default;
};

struct ProgramIdentity {
  std::string path;
  std::string sha256;

  friend bool operator==(const ProgramIdentity&, const ProgramIdentity&) = default;
};

struct RelevanceReport {
  std::string catalog_name;
  ProgramIdentity faulty_program;
  ProgramIdentity repaired_program;
  std::vector<RelevanceEntry> entries;
  std::vector<std::string> relevant_set;

  bool has_regression() const {
    for (const auto& e : entries)
      if (e.status == RelevanceStatus::DegenerateRegression) return true;
    return false;
  }

  friend bool operator==(const RelevanceReport&, const RelevanceReport&) = default;
};

inline std::vector<Verdict> check_version(const char* label, const Cfg& cfg, const Catalog& catalog) {
  try {
    return Checker(cfg).check_all(catalog);
  } catch (const Error& e) {
    throw VersionError(label, e.what());
  }
}

inline RelevanceReport check_relevance(const Cfg& faulty, const Cfg& repaired, const Catalog& catalog,
                                       ProgramIdentity faulty_id = {}, ProgramIdentity repaired_id = {}) {
  RelevanceReport report;
  report.catalog_name = catalog.hal_name();
  report.faulty_program = std::move(faulty_id);
  report.repaired_program = std::move(repaired_id);
  const auto fv = check_version("faulty", faulty, catalog);
  const auto rv = check_version("repaired", repaired, catalog);
  for (std::size_t i = 0; i < fv.size(); ++i) {
    RelevanceEntry e{fv[i].dep_id, fv[i], rv[i], classify(fv[i], rv[i])};
    if (e.status == RelevanceStatus::Relevant) report.relevant_set.push_back(e.dep_id);
    report.entries.push_back(std::move(e));
  }
  return report;
}

inline RelevanceReport check_relevance(const ProgramVersion& faulty, const ProgramVersion& repaired,
                                       const Catalog& catalog) {
  return check_relevance(faulty.cfg, repaired.cfg, catalog, {faulty.path, faulty.sha256},
                         {repaired.path, repaired.sha256});
}

}  // namespace halcheck
