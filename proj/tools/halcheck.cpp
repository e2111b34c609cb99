// halcheck: checks application programs against catalogs of temporal HAL
// dependencies and decides which dependencies are relevant to a failure.
//
// Exit codes: 0 clean, 1 finding, 2 usage/input/tool error, 3 regression
// (relevance only).

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "halcheck/annotate.hpp"
#include "halcheck/catalog.hpp"
#include "halcheck/checker.hpp"
#include "halcheck/frontend/cfg.hpp"
#include "halcheck/oracle.hpp"
#include "halcheck/relevance.hpp"
#include "halcheck/report.hpp"
#include "halcheck/sha256.hpp"

namespace {

using namespace halcheck;

constexpr int kExitClean = 0;
constexpr int kExitFinding = 1;
constexpr int kExitError = 2;
constexpr int kExitRegression = 3;

struct CommonOptions {
  std::string catalog_path;
  std::vector<std::string> deps;
  std::string format = "text";
  bool strict_requests = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Catalog load_catalog(const std::string& path) {
  if (path.empty()) return builtin_spidev_catalog();
  const std::string text = read_file(path);
  try {
    return parse_catalog(text);
  } catch (const SyntaxError& e) {
    throw Error(path + ":" + e.what());
  }
}

// Catalog entries to report on, in catalog order.
Catalog selected(const Catalog& catalog, const std::vector<std::string>& deps) {
  if (deps.empty()) return catalog;
  return catalog.restrict_to(deps);
}

bool use_color() { return std::getenv("HALCHECK_NO_COLOR") == nullptr && isatty(STDOUT_FILENO) == 1; }

void print_warnings(const std::string& path, const Cfg& cfg) {
  for (const auto& w : cfg.warnings)
    std::cerr << path << ":" << to_string(w.loc) << ": warning: " << w.message << "\n";
}

Cfg load_program(const std::string& path, const std::string& source, const Catalog& catalog,
                 const CommonOptions& opts) {
  LowerOptions lower;
  lower.unknown_request_is_error = opts.strict_requests;
  try {
    Cfg cfg = build_cfg(source, catalog, lower);
    print_warnings(path, cfg);
    return cfg;
  } catch (const SyntaxError& e) {
    throw Error(path + ":" + e.what());
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

void emit(const report::Json& json) { std::cout << json.dump(2) << "\n"; }

int run_check(const std::string& program, const CommonOptions& opts) {
  const Catalog catalog = load_catalog(opts.catalog_path);
  const Catalog checked = selected(catalog, opts.deps);
  const std::string source = read_file(program);
  const Cfg cfg = load_program(program, source, catalog, opts);
  std::vector<Verdict> verdicts;
  try {
    verdicts = Checker(cfg).check_all(checked);
  } catch (const Error& e) {
    throw Error(program + ": " + e.what());
  }
  const report::ProgramInfo info{program, sha256_hex(source)};
  if (opts.format == "json") {
    emit(report::check_json(checked, info, verdicts));
  } else {
    std::cout << report::check_text(checked, info, verdicts, report::Style(use_color()));
  }
  return report::violated_ids(verdicts).empty() ? kExitClean : kExitFinding;
}

int run_relevance(const std::string& faulty_path, const std::string& repaired_path, const CommonOptions& opts) {
  const Catalog catalog = load_catalog(opts.catalog_path);
  const Catalog checked = selected(catalog, opts.deps);
  LowerOptions lower;
  lower.unknown_request_is_error = opts.strict_requests;

  auto load = [&](const char* label, const std::string& path) {
    std::string source;
    try {
      source = read_file(path);
    } catch (const Error& e) {
      throw VersionError(label, e.what());
    }
    ProgramVersion v = load_version(label, path, source, catalog, lower);
    print_warnings(path, v.cfg);
    return v;
  };
  const ProgramVersion faulty = load("faulty", faulty_path);
  const ProgramVersion repaired = load("repaired", repaired_path);
  const RelevanceReport r = check_relevance(faulty, repaired, checked);

  if (opts.format == "json") {
    emit(report::relevance_json(r));
  } else {
    std::cout << report::relevance_text(r, checked, report::Style(use_color()));
  }
  if (r.has_regression()) return kExitRegression;
  return r.relevant_set.empty() ? kExitFinding : kExitClean;
}

int run_annotate(const std::string& out_path, const CommonOptions& opts) {
  const Catalog catalog = load_catalog(opts.catalog_path);
  const Catalog annotated = selected(catalog, opts.deps);
  const std::string text = emit_annotations(annotated);
  const std::string path = out_path.empty() ? annotated.hal_name() + "_annotated_stubs.c" : out_path;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
  out.close();
  if (!out) throw Error("cannot write '" + path + "'");
  std::cout << "wrote " << annotated.size() << " ghost variables to " << path << "\n";
  return kExitClean;
}

int run_oracle(const std::string& program, int loop_bound, std::size_t max_paths, const CommonOptions& opts) {
  const Catalog catalog = load_catalog(opts.catalog_path);
  const Catalog checked = selected(catalog, opts.deps);
  const std::string source = read_file(program);
  const Cfg cfg = load_program(program, source, catalog, opts);
  std::vector<Trace> traces;
  try {
    traces = enumerate_traces(cfg, EnumerationConfig{loop_bound, max_paths});
  } catch (const Error& e) {
    throw Error(program + ": " + e.what());
  }
  std::vector<report::OracleResult> results;
  bool any = false;
  for (const auto& d : checked.dependencies()) {
    results.push_back({d.id, oracle_verdict(traces, d)});
    any = any || results.back().status == Status::Violated;
  }
  const report::ProgramInfo info{program, sha256_hex(source)};
  if (opts.format == "json") {
    emit(report::oracle_json(checked, info, loop_bound, traces.size(), results));
  } else {
    std::cout << report::oracle_text(checked, info, loop_bound, traces.size(), results,
                                     report::Style(use_color()));
  }
  return any ? kExitFinding : kExitClean;
}

int run_catalog_validate(const std::string& path) {
  const Catalog catalog = load_catalog(path);
  std::cout << (path.empty() ? std::string("built-in catalog") : path) << ": ok, hal " << catalog.hal_name()
            << ", " << catalog.size() << " dependencies\n";
  return kExitClean;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"halcheck - temporal HAL dependency checker"};
  app.require_subcommand(1);

  CommonOptions opts;
  auto add_common = [&](CLI::App* cmd, bool with_format) {
    cmd->add_option("--catalog", opts.catalog_path, "Catalog file (default: built-in spidev catalog)");
    cmd->add_option("--deps", opts.deps, "Restrict to these dependency ids")->delimiter(',');
    if (with_format)
      cmd->add_option("--format", opts.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    cmd->add_flag("--strict-requests", opts.strict_requests,
                  "Treat ioctl requests missing from the catalog as errors");
  };

  std::string program;
  auto* check = app.add_subcommand("check", "Check a program against every catalog dependency");
  check->add_option("program", program, "mini-C source file")->required();
  add_common(check, true);

  std::string faulty, repaired;
  auto* relevance = app.add_subcommand("relevance", "Classify dependencies over a faulty/repaired pair");
  relevance->add_option("faulty", faulty, "Faulty program")->required();
  relevance->add_option("repaired", repaired, "Repaired program")->required();
  add_common(relevance, true);

  std::string out_path;
  auto* annotate = app.add_subcommand("annotate", "Write ACSL-annotated HAL stubs");
  annotate->add_option("--out", out_path, "Output file (default: <hal>_annotated_stubs.c)");
  add_common(annotate, false);

  int loop_bound = 2;
  std::size_t max_paths = 100'000;
  auto* oracle = app.add_subcommand("oracle", "Bounded path enumeration verdicts (debugging)");
  oracle->add_option("program", program, "mini-C source file")->required();
  oracle->add_option("--loop-bound", loop_bound, "Iterations explored per loop entry")
      ->check(CLI::NonNegativeNumber);
  oracle->add_option("--max-paths", max_paths, "Abort when one program point has more distinct traces than this")->check(CLI::PositiveNumber);
  add_common(oracle, true);

  std::string validate_path;
  auto* catalog = app.add_subcommand("catalog", "Catalog utilities");
  catalog->require_subcommand(1);
  auto* validate = catalog->add_subcommand("validate", "Parse and validate a catalog file");
  validate->add_option("path", validate_path, "Catalog file (default: built-in)");
  validate->add_option("--catalog", validate_path, "Catalog file (default: built-in)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*check) return run_check(program, opts);
    if (*relevance) return run_relevance(faulty, repaired, opts);
    if (*annotate) return run_annotate(out_path, opts);
    if (*oracle) return run_oracle(program, loop_bound, max_paths, opts);
    if (*validate) return run_catalog_validate(validate_path);
  } catch (const std::exception& e) {
    std::cerr << "halcheck: error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
