#include <gtest/gtest.h>


#include "halcheck/checker.hpp"
#include "halcheck/fixtures.hpp"
#include "halcheck/oracle.hpp"

namespace halcheck {
namespace {

const Catalog& spidev() { return builtin_spidev_catalog(); }



TEST(EnumerateTraces, StraightLine) {
  EXPECT_EQ(enumerate_traces(build_cfg("int main(){ open(\"d\", 0); read(fd, b, 1); }", spidev())),
            (std::vector<Trace>{{hal_call("open"), hal_call("read")}}));
}

TEST(EnumerateTraces, OptionalOpen) {
  const auto traces = enumerate_traces(
      build_cfg("int main(){ if (c) open(\"d\", 0); read(fd, b, 1); }", spidev()));
  ASSERT_EQ(traces.size(), 2u);
  const Trace with = {hal_call("open"), hal_call("read")};
  const Trace without = {hal_call("read")};
  EXPECT_NE(std::find(traces.begin(), traces.end(), with), traces.end());
  EXPECT_NE(std::find(traces.begin(), traces.end(), without), traces.end());
}

TEST(EnumerateTraces, LoopBound) {
  const Cfg cfg = build_cfg("int main(){ while (c) open(\"d\", 0); }", spidev());
  auto traces = enumerate_traces(cfg, {2, 100});
  std::sort(traces.begin(), traces.end(), [](const Trace& a, const Trace& b) { return a.size() < b.size(); });
  EXPECT_EQ(traces, (std::vector<Trace>{{}, {hal_call("open")}, {hal_call("open"), hal_call("open")}}));
  EXPECT_EQ(enumerate_traces(cfg, {0, 100}), (std::vector<Trace>{{}}));
}

TEST(EnumerateTraces, CalleeLoopsResetPerCall) {
  const Cfg cfg = build_cfg("void f() { while (c) read(fd, b, 1); } int main(){ f(); f(); }", spidev());
  // Each call explores 0..2 iterations independently: lengths 0..4.
  std::set<std::size_t> lengths;
  for (const auto& t : enumerate_traces(cfg, {2, 1000})) lengths.insert(t.size());
  EXPECT_EQ(lengths, (std::set<std::size_t>{0, 1, 2, 3, 4}));
}

TEST(EnumerateTraces, IndependentBranchesMultiply) {
  for (int b = 1; b <= 8; ++b) {
    std::string src = "int main(){\n";
    for (int i = 0; i < b; ++i) src += "  if (c) { read(fd, x, 1); } else { write(fd, x, 1); }\n";
    src += "}\n";
    const auto traces = enumerate_traces(build_cfg(src, spidev()));
    EXPECT_EQ(traces.size(), std::size_t{1} << b);
    for (const auto& t : traces) EXPECT_EQ(t.size(), static_cast<std::size_t>(b));
  }
}

TEST(EnumerateTraces, PathCap) {
  std::string src = "int main(){\n";
  for (int i = 0; i < 20; ++i) src += "  if (c) read(fd, x, 1); else write(fd, x, 1);\n";
  src += "}\n";
  const Cfg cfg = build_cfg(src, spidev());
  EXPECT_THROW(enumerate_traces(cfg), PathCapExceeded);
  EXPECT_THROW(enumerate_traces(cfg, {2, 3}), PathCapExceeded);
  // Paths that differ only in event-free branches count once.
  std::string quiet = "int main(){\n";
  for (int i = 0; i < 40; ++i) quiet += "  if (ioctl(fd, MSG, &t) == -1) printf(\"x\");\n";
  quiet += "}\n";
  EXPECT_EQ(enumerate_traces(build_cfg(quiet, spidev()), {2, 1}).size(), 1u);
}

TEST(EnumerateTraces, RejectsRecursion) {
  EXPECT_THROW(enumerate_traces(build_cfg("int f() { return f(); } int main() { f(); }", spidev())),
               UnsupportedProgram);
}

TEST(OracleVerdict, Examples) {
  const auto& io = builtin_fixtures().front();
  EXPECT_EQ(oracle_verdict(build_cfg(io.faulty_source, spidev()), *spidev().find("d26")), Status::Violated);
  const Cfg empty = build_cfg("int main(){ }", spidev());
  for (const auto& d : spidev().dependencies()) EXPECT_EQ(oracle_verdict(empty, d), Status::Satisfied);
  const Cfg loop = build_cfg("int main(){ while (c) { ioctl(fd, MSG, &t); open(\"d\", 0); } }", spidev());
  EXPECT_EQ(oracle_verdict(loop, *spidev().find("d3")), Status::Violated);
  EXPECT_EQ(oracle_verdict(loop, *spidev().find("d3"), {0, 10}), Status::Satisfied);
}

TEST(OracleVerdict, FixturesMatchManifest) {
  for (const auto& p : builtin_fixtures()) {
    for (const auto& [src, expected] :
         {std::pair{p.faulty_source, p.expected_violated_faulty}, std::pair{p.repaired_source, p.expected_violated_repaired}}) {
      const auto traces = enumerate_traces(build_cfg(src, spidev()));
      std::set<std::string> violated;
      for (const auto& d : spidev().dependencies())
        if (oracle_verdict(traces, d) == Status::Violated) violated.insert(d.id);
      EXPECT_EQ(violated, expected) << p.name;
    }
  }
}

std::vector<Status> checker_statuses(const Cfg& cfg) {
  std::vector<Status> out;
  for (const auto& v : Checker(cfg).check_all(spidev())) out.push_back(v.status);
  return out;
}

std::vector<Status> oracle_statuses(const std::vector<Trace>& traces) {
  std::vector<Status> out;
  for (const auto& d : spidev().dependencies()) out.push_back(oracle_verdict(traces, d));
  return out;
}

TEST(OracleProperty, AgreesWithCheckerOnAcyclicPrograms) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const std::string src = generate_random_program(seed);
    const Cfg cfg = build_cfg(src, spidev());
    ASSERT_EQ(checker_statuses(cfg), oracle_statuses(enumerate_traces(cfg))) << src;
  }
}

TEST(OracleProperty, AgreesWithCheckerOnLoopyPrograms) {
  int loopy = 0;
  for (std::uint64_t seed = 0; loopy < 200; ++seed) {
    GeneratorLimits limits;
    limits.max_loops = 2;
    limits.max_calls = 10;
    const std::string src = generate_random_program(1'000'000 + seed, limits);
    if (src.find("while") == std::string::npos && src.find("for (") == std::string::npos) continue;
    ++loopy;
    const Cfg cfg = build_cfg(src, spidev());
    const auto bound2 = oracle_statuses(enumerate_traces(cfg, {2, 100'000}));
    ASSERT_EQ(checker_statuses(cfg), bound2) << src;
    ASSERT_EQ(bound2, oracle_statuses(enumerate_traces(cfg, {3, 1'000'000}))) << src;
  }
}

}  // namespace
}  // namespace halcheck
