#include <gtest/gtest.h>

#include <algorithm>

#include "halcheck/checker.hpp"
#include "halcheck/fixtures.hpp"
#include "halcheck/oracle.hpp"

namespace halcheck {
namespace {

const Catalog& spidev() { return builtin_spidev_catalog(); }

std::set<std::string> violated_set(const std::vector<Verdict>& vs) {
  std::set<std::string> out;
  for (const auto& v : vs)
    if (v.status == Status::Violated) out.insert(v.dep_id);
  return out;
}

Verdict check_dep(const std::string& src, const std::string& id) {
  return check(build_cfg(src, spidev()), *spidev().find(id));
}

TEST(Checker, FixtureVerdicts) {
  for (const auto& p : builtin_fixtures()) {
    EXPECT_EQ(violated_set(check_all(build_cfg(p.faulty_source, spidev()), spidev())), p.expected_violated_faulty)
        << p.name;
    EXPECT_EQ(violated_set(check_all(build_cfg(p.repaired_source, spidev()), spidev())),
              p.expected_violated_repaired)
        << p.name;
  }
}

TEST(Checker, LoopCarriedViolation) {
  // The first iteration sends a message before any open.
  const Verdict v = check_dep("int main(){ while (c) { ioctl(fd, MSG, &t); open(\"d\", 0); } }", "d3");
  EXPECT_EQ(v.status, Status::Violated);
  ASSERT_TRUE(v.counterexample);
  EXPECT_EQ(events_of(*v.counterexample), (Trace{ioctl_call("MSG")}));
  EXPECT_EQ(v.counterexample->front().loc, (SourceLoc{1, 25}));
}

TEST(Checker, DominatingAntecedent) {
  EXPECT_EQ(check_dep("int main(){ open(\"d\", 0); if (c) { read(fd, b, 1); } else { while (c) read(fd, b, 1); } }",
                      "d1")
                .status,
            Status::Satisfied);
  EXPECT_EQ(check_dep("int main(){ if (c) open(\"d\", 0); read(fd, b, 1); }", "d1").status, Status::Violated);
}

TEST(Checker, EmptyMain) {
  const auto verdicts = check_all(build_cfg("int main(void) { return 0; }", spidev()), spidev());
  ASSERT_EQ(verdicts.size(), 26u);
  for (const auto& v : verdicts) {
    EXPECT_EQ(v.status, Status::Satisfied);
    EXPECT_FALSE(v.counterexample);
  }
}

TEST(Checker, AntecedentInCallee) {
  const char* src =
      "static void setup(int fd) { ioctl(fd, WR_MODE32, &m); }\n"
      "int main() { int fd = open(\"d\", 0); setup(fd); ioctl(fd, MSG, &t); }\n";
  EXPECT_EQ(check_dep(src, "d17").status, Status::Satisfied);
  const char* skipped =
      "static void setup(int fd) { if (quirk) return; ioctl(fd, WR_MODE32, &m); }\n"
      "int main() { int fd = open(\"d\", 0); setup(fd); ioctl(fd, MSG, &t); }\n";
  const Verdict v = check_dep(skipped, "d17");
  EXPECT_EQ(v.status, Status::Violated);
  EXPECT_EQ(events_of(*v.counterexample), (Trace{hal_call("open"), ioctl_call("MSG")}));
}

TEST(Checker, RecursionIsRejected) {
  const char* src = "int a(); int b() { return a(); } int a() { return b(); } int main() { a(); }";
  try {
    check_all(build_cfg(src, spidev()), spidev());
    FAIL();
  } catch (const UnsupportedProgram& e) {
    EXPECT_NE(std::string(e.what()).find("a -> b -> a"), std::string::npos) << e.what();
  }
  // Unreachable recursion is harmless.
  EXPECT_NO_THROW(check_all(build_cfg("int r() { return r(); } int main() { }", spidev()), spidev()));
}

TEST(Checker, CounterexampleIsShortestAndLeast) {
  const char* src =
      "int main() {\n"
      "  if (c) { open(\"d\", 0); close(fd); }\n"
      "  if (c) { read(fd, b, 1); } else { close(fd); }\n"
      "}\n";
  const Verdict v = check_dep(src, "d4");
  ASSERT_EQ(v.status, Status::Violated);
  // The path skipping the first block is shorter; of the two violating
  // closes on it, only line 3's else arm is reachable in state 0.
  EXPECT_EQ(*v.counterexample, (std::vector<CounterexampleStep>{{{3, 37}, hal_call("close")}}));
}

// Counterexamples replay: their events form a trace the monitor rejects at
// the last step, and which the path enumerator also produces as a prefix.
TEST(CheckerProperty, CounterexamplesReplay) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const Cfg cfg = build_cfg(generate_random_program(seed), spidev());
    const auto traces = enumerate_traces(cfg);
    for (const auto& v : Checker(cfg).check_all(spidev())) {
      if (v.status != Status::Violated) continue;
      const auto& dep = *spidev().find(v.dep_id);
      const Trace t = events_of(*v.counterexample);
      ASSERT_FALSE(t.empty());
      const auto r = run_trace(t, dep);
      ASSERT_EQ(r.status, Status::Violated);
      EXPECT_EQ(*r.violation_index, t.size() - 1);
      const bool is_prefix = std::any_of(traces.begin(), traces.end(), [&](const Trace& full) {
        return full.size() >= t.size() && std::equal(t.begin(), t.end(), full.begin());
      });
      EXPECT_TRUE(is_prefix) << "seed " << seed << " " << v.dep_id;
    }
  }
}

TEST(CheckerProperty, StrategiesAgree) {
  std::mt19937_64 rng(3);
  const auto all = spidev().dependencies();
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    GeneratorLimits limits;
    limits.max_loops = static_cast<int>(seed % 2);
    const Cfg cfg = build_cfg(generate_random_program(seed, limits), spidev());
    const Checker checker(cfg);
    std::vector<std::string> ids;
    for (const auto& d : all)
      if (rng() % 2) ids.push_back(d.id);
    if (ids.size() > Checker::kCombinedLimit) ids.resize(Checker::kCombinedLimit);
    const Catalog sub = spidev().restrict_to(ids);
    const auto combined = checker.check_all(sub, CheckAllStrategy::Combined);
    EXPECT_EQ(combined, checker.check_all(sub, CheckAllStrategy::PerDependency));
    EXPECT_EQ(combined, checker.check_all(sub, CheckAllStrategy::Auto));
  }
}

TEST(CheckerProperty, PrependingAntecedentSatisfies) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const std::string src = generate_random_program(seed);
    for (const auto& d : spidev().dependencies()) {
      std::string call = d.antecedent.request ? "ioctl(fd, " + *d.antecedent.request + ", &arg)"
                                              : d.antecedent.function == "open" ? "open(\"d\", 2)"
                                                                                : d.antecedent.function + "(fd)";
      std::string guarded = src;
      const auto at = guarded.find("int c = 0;\n") + std::string("int c = 0;\n").size();
      guarded.insert(at, "    " + call + ";\n");
      EXPECT_EQ(check(build_cfg(guarded, spidev()), d).status, Status::Satisfied) << d.id << "\n" << guarded;
    }
  }
}

TEST(CheckerProperty, Deterministic) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    GeneratorLimits limits;
    limits.max_loops = 2;
    const std::string src = generate_random_program(seed, limits);
    EXPECT_EQ(check_all(build_cfg(src, spidev()), spidev()), check_all(build_cfg(src, spidev()), spidev()));
  }
}

}  // namespace
}  // namespace halcheck
