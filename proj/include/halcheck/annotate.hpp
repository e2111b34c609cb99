#pragma once

// ACSL-annotated HAL stubs. For each dependency `dK: A < B` the output gets
//
//   /*@ ghost int state_dK = 0; */       global, in catalog order
//   /*@ ghost state_dK = 1; */           in A, right before it returns
//   /*@ assert (state_dK == 1); */       first statement of B
//
// ioctl stubs switch on the request so every constant has its own case to
// carry annotations.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "halcheck/catalog.hpp"

namespace halcheck {

struct StubTemplate {
  std::string function;
  std::string signature;
  std::vector<std::string> body;  // statements between the prologue and pre-return anchors
  std::string return_statement;
  // Request dispatch (ioctl only): switch subject and the constants with a case.
  std::string dispatch_on;
  std::vector<std::string> requests;
};

struct StubTemplateSet {
  std::vector<std::string> preamble;  // emitted verbatim before the ghost declarations
  std::vector<StubTemplate> stubs;

  const StubTemplate* find(std::string_view function) const {
    for (const auto& s : stubs)
      if (s.function == function) return &s;
    return nullptr;
  }
};

inline std::string ghost_name(const TemporalDependency& dep) { return "state_" + dep.id; }
inline std::string ghost_declaration(const TemporalDependency& dep) {
  return "/*@ ghost int " + ghost_name(dep) + " = 0; */";
}
inline std::string ghost_update(const TemporalDependency& dep) {
  return "/*@ ghost " + ghost_name(dep) + " = 1; */";
}
inline std::string ghost_assert(const TemporalDependency& dep) {
  return "/*@ assert (" + ghost_name(dep) + " == 1); */";
}

inline const StubTemplateSet& spidev_stub_templates() {
  static const StubTemplateSet set = [] {
    StubTemplateSet s;
    const std::vector<std::string> requests = {
        "MSG",          "RD_MODE",          "WR_MODE",          "RD_MODE32",
        "WR_MODE32",    "RD_LSB_FIRST",     "WR_LSB_FIRST",     "RD_BITS_PER_WORD",
        "WR_BITS_PER_WORD", "RD_MAX_SPEED_HZ", "WR_MAX_SPEED_HZ"};
    s.preamble = {"/* spidev HAL stubs with ghost annotations. Generated by halcheck. */",
                  "",
                  "#include <stddef.h>",
                  "#include <sys/types.h>",
                  "",
                  "extern int __VERIFIER_nondet_int(void);",
                  "",
                  "enum spidev_request {"};
    for (std::size_t i = 0; i < requests.size(); ++i)
      s.preamble.push_back("    " + requests[i] + (i + 1 < requests.size() ? "," : ""));
    s.preamble.push_back("};");
    s.stubs = {
        {"open", "int open(const char *path, int oflag, ...)",
         {"int ret = __VERIFIER_nondet_int();"}, "return ret;", "", {}},
        {"close", "int close(int fd)", {"int ret = __VERIFIER_nondet_int();"}, "return ret;", "", {}},
        {"read", "ssize_t read(int fd, void *buf, size_t nbyte)", {}, "return __VERIFIER_nondet_int();",
         "", {}},
        {"write", "ssize_t write(int fd, const void *buf, size_t nbyte)", {},
         "return __VERIFIER_nondet_int();", "", {}},
        {"ioctl", "int ioctl(int fd, unsigned long request, ...)",
         {"int ret = __VERIFIER_nondet_int();"}, "return ret;", "request", requests},
    };
    return s;
  }();
  return set;
}

namespace detail {

struct AnnotationSite {
  std::vector<std::string> asserts;
  std::vector<std::string> updates;
};

inline void emit_site(std::string& out, const std::string& indent, const StubTemplate& t,
                      const AnnotationSite& site, bool with_body) {
  for (const auto& a : site.asserts) out += indent + a + "\n";
  if (with_body) {
    for (const auto& b : t.body) out += indent + b + "\n";
  }
  if (!site.asserts.empty() || (with_body && !t.body.empty())) out += "\n";
  for (const auto& u : site.updates) out += indent + u + "\n";
  out += indent + t.return_statement + "\n";
}

}  // namespace detail

// Throws Error if a dependency names a function or request constant without
// a template, or if two dependencies map to the same ghost variable.
inline std::string emit_annotations(const Catalog& catalog,
                                    const StubTemplateSet& templates = spidev_stub_templates()) {
  using detail::AnnotationSite;
  std::map<HalCall, AnnotationSite> sites;
  std::set<std::string> ghosts;
  auto site_for = [&](const HalCall& call, const TemporalDependency& dep) -> AnnotationSite& {
    const StubTemplate* t = templates.find(call.function);
    if (!t) throw Error("dependency " + dep.id + ": no stub template for '" + call.function + "'");
    if (call.request) {
      if (t->dispatch_on.empty())
        throw Error("dependency " + dep.id + ": stub '" + call.function + "' does not dispatch on requests");
      if (std::find(t->requests.begin(), t->requests.end(), *call.request) == t->requests.end())
        throw Error("dependency " + dep.id + ": stub '" + call.function + "' has no case for " +
                    *call.request);
    }
    return sites[call];
  };

  for (const auto& d : catalog.dependencies()) {
    if (!ghosts.insert(ghost_name(d)).second)
      throw Error("ghost variable " + ghost_name(d) + " declared twice");
    site_for(d.consequent, d).asserts.push_back(ghost_assert(d));
    site_for(d.antecedent, d).updates.push_back(ghost_update(d));
  }

  std::string out;
  for (const auto& line : templates.preamble) out += line + "\n";
  if (!catalog.empty()) out += "\n";
  for (const auto& d : catalog.dependencies()) out += ghost_declaration(d) + "\n";

  for (const auto& t : templates.stubs) {
    out += "\n" + t.signature + "\n{\n";
    if (t.dispatch_on.empty()) {
      const auto it = sites.find(HalCall{t.function, std::nullopt});
      detail::emit_site(out, "    ", t, it == sites.end() ? AnnotationSite{} : it->second, true);
    } else {
      for (const auto& b : t.body) out += "    " + b + "\n";
      out += "\n    switch (" + t.dispatch_on + ") {\n";
      for (const auto& r : t.requests) {
        out += "    case " + r + ":\n";
        const auto it = sites.find(HalCall{t.function, r});
        detail::emit_site(out, "        ", t, it == sites.end() ? AnnotationSite{} : it->second, false);
      }
      out += "    default:\n        " + t.return_statement + "\n    }\n";
    }
    out += "}\n";
  }
  return out;
}

}  // namespace halcheck
