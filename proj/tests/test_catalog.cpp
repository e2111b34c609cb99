#include <gtest/gtest.h>

#include <random>

#include "halcheck/catalog.hpp"
#include "support/cli.hpp"

namespace halcheck {
namespace {

TEST(ParseCatalog, SingleEntry) {
  const Catalog c = parse_catalog("hal spidev\nd1: open < read\n");
  EXPECT_EQ(c.hal_name(), "spidev");
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.dependencies()[0], (TemporalDependency{"d1", hal_call("open"), hal_call("read")}));
}

TEST(ParseCatalog, EmptyTextAndHeaderOnly) {
  EXPECT_TRUE(parse_catalog("").empty());
  EXPECT_TRUE(parse_catalog("# nothing here\n\n").empty());
  const Catalog c = parse_catalog("hal spidev\n");
  EXPECT_TRUE(c.empty());
  EXPECT_EQ(c.hal_name(), "spidev");
}

TEST(ParseCatalog, WhitespaceAndComments) {
  const Catalog c = parse_catalog(
      "  # header follows\n"
      "hal   spidev   # trailing comment\n"
      "\n"
      "d17 :ioctl ( WR_MODE32 )<ioctl(MSG)\r\n");
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.dependencies()[0].antecedent, ioctl_call("WR_MODE32"));
  EXPECT_EQ(c.dependencies()[0].consequent, ioctl_call("MSG"));
}

TEST(ParseCatalog, AntecedentEqualsConsequent) {
  try {
    parse_catalog("hal spidev\nd9: open < open\n");
    FAIL() << "expected CatalogError";
  } catch (const CatalogError& e) {
    EXPECT_EQ(e.location().line, 2);
    EXPECT_NE(std::string(e.what()).find("antecedent equals consequent"), std::string::npos);
  }
}

TEST(ParseCatalog, DuplicateId) {
  EXPECT_THROW(parse_catalog("hal x\nd1: open < read\nd1: open < write\n"), CatalogError);
}

TEST(ParseCatalog, RequestOnNonIoctl) {
  EXPECT_THROW(parse_catalog("hal x\nd1: open(MSG) < read\n"), CatalogError);
  EXPECT_THROW(parse_catalog("hal x\nd1: open < ioctl\n"), CatalogError);
}

TEST(ParseCatalog, SyntaxErrorsCarryPosition) {
  try {
    parse_catalog("hal spidev\nd1: open read\n");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.location(), (SourceLoc{2, 10}));
  }
  try {
    parse_catalog("hal spidev\nd1: open < ioctl(MSG\n");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.location().line, 2);
    EXPECT_NE(std::string(e.what()).find("')'"), std::string::npos);
  }
  EXPECT_THROW(parse_catalog("d1: open < read\n"), SyntaxError);
  EXPECT_THROW(parse_catalog("hal spidev extra\n"), SyntaxError);
  EXPECT_THROW(parse_catalog("hal spidev\nd1: open < read < write\n"), SyntaxError);
  EXPECT_THROW(parse_catalog("hal spidev\nd1: open ◁ read\n"), SyntaxError);
}

TEST(BuiltinCatalog, MatchesIndexedLookups) {
  const Catalog& c = builtin_spidev_catalog();
  EXPECT_EQ(c.size(), 26u);
  EXPECT_EQ(c.hal_name(), "spidev");
  ASSERT_NE(c.find("d17"), nullptr);
  EXPECT_EQ(c.find("d17")->antecedent, ioctl_call("WR_MODE32"));
  EXPECT_EQ(c.find("d17")->consequent, ioctl_call("MSG"));
  EXPECT_EQ(c.find("d26")->antecedent, ioctl_call("WR_MAX_SPEED_HZ"));
  EXPECT_EQ(c.find("d26")->consequent, ioctl_call("MSG"));
  EXPECT_EQ(c.find("d23")->antecedent, ioctl_call("WR_BITS_PER_WORD"));
  EXPECT_EQ(c.find("d3")->consequent, ioctl_call("MSG"));
  EXPECT_EQ(c.find("d4")->consequent, hal_call("close"));
  EXPECT_EQ(c.find("d99"), nullptr);
}

TEST(BuiltinCatalog, Structure) {
  const Catalog& c = builtin_spidev_catalog();
  const auto deps = c.dependencies();
  const std::vector<std::string> open_consequents = {
      "read",          "write",         "ioctl(MSG)",         "close",
      "ioctl(RD_MODE)", "ioctl(WR_MODE)", "ioctl(RD_MODE32)",  "ioctl(WR_MODE32)",
      "ioctl(RD_LSB_FIRST)", "ioctl(WR_LSB_FIRST)", "ioctl(RD_BITS_PER_WORD)",
      "ioctl(WR_BITS_PER_WORD)", "ioctl(RD_MAX_SPEED_HZ)", "ioctl(WR_MAX_SPEED_HZ)"};
  std::set<std::string> ids;
  int open_antecedents = 0;
  for (std::size_t i = 0; i < deps.size(); ++i) {
    EXPECT_EQ(deps[i].id, "d" + std::to_string(i + 1));
    ids.insert(deps[i].id);
    if (deps[i].antecedent == hal_call("open")) {
      ++open_antecedents;
      ASSERT_LT(i, 14u);
      EXPECT_EQ(to_string(deps[i].consequent), open_consequents[i]);
    }
  }
  EXPECT_EQ(ids.size(), 26u);
  EXPECT_EQ(open_antecedents, 14);

  // d15..d26: each write-configuration request before each data-moving call.
  const std::vector<std::string> configs = {"WR_MODE32", "WR_LSB_FIRST", "WR_BITS_PER_WORD", "WR_MAX_SPEED_HZ"};
  const std::vector<HalCall> movers = {hal_call("read"), hal_call("write"), ioctl_call("MSG")};
  for (std::size_t k = 0; k < 12; ++k) {
    const auto& d = deps[14 + k];
    EXPECT_EQ(d.antecedent, ioctl_call(configs[k / 3])) << d.id;
    EXPECT_EQ(d.consequent, movers[k % 3]) << d.id;
  }
  EXPECT_EQ(c.functions(), (std::set<std::string>{"close", "ioctl", "open", "read", "write"}));
  EXPECT_EQ(c.requests().size(), 11u);
}

TEST(BuiltinCatalog, CompiledCopyMatchesShippedFile) {
  const std::string text = testing::slurp(HALCHECK_SOURCE_DIR "/catalogs/spidev.deps");
  EXPECT_EQ(parse_catalog(text), builtin_spidev_catalog());
}

TEST(Catalog, RestrictPreservesCatalogOrder) {
  const std::vector<std::string> ids = {"d26", "d1"};
  const Catalog sub = builtin_spidev_catalog().restrict_to(ids);
  ASSERT_EQ(sub.size(), 2u);
  EXPECT_EQ(sub.dependencies()[0].id, "d1");
  EXPECT_EQ(sub.dependencies()[1].id, "d26");
  const std::vector<std::string> bad = {"d1", "d99"};
  EXPECT_THROW(builtin_spidev_catalog().restrict_to(bad), Error);
}

// render_catalog is the inverse of parse_catalog on valid catalogs.
TEST(CatalogProperty, RenderParseRoundTrip) {
  std::mt19937_64 rng(7);
  const std::vector<std::string> functions = {"open", "close", "read", "write", "ioctl", "poll", "mmap"};
  const std::vector<std::string> requests = {"MSG", "WR_MODE", "RD_MODE", "X_1"};
  auto random_call = [&] {
    HalCall c{functions[rng() % functions.size()], std::nullopt};
    if (c.function == "ioctl") c.request = requests[rng() % requests.size()];
    return c;
  };
  EXPECT_EQ(parse_catalog(render_catalog(builtin_spidev_catalog())), builtin_spidev_catalog());
  for (int round = 0; round < 300; ++round) {
    Catalog c("hal_" + std::to_string(round));
    const int n = static_cast<int>(rng() % 12);
    for (int i = 0; i < n; ++i) {
      TemporalDependency d{"r" + std::to_string(i), random_call(), random_call()};
      if (d.antecedent == d.consequent) continue;
      c.add(d);
    }
    EXPECT_EQ(parse_catalog(render_catalog(c)), c) << render_catalog(c);
  }
}

}  // namespace
}  // namespace halcheck
