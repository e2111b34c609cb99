#include <gtest/gtest.h>

#include "halcheck/fixtures.hpp"
#include "halcheck/relevance.hpp"

namespace halcheck {
namespace {

const Catalog& spidev() { return builtin_spidev_catalog(); }

Verdict verdict(const std::string& id, Status s) { return {id, s, std::nullopt}; }

TEST(Classify, TruthTable) {
  EXPECT_EQ(classify(verdict("d1", Status::Violated), verdict("d1", Status::Satisfied)), RelevanceStatus::Relevant);
  EXPECT_EQ(classify(verdict("d1", Status::Violated), verdict("d1", Status::Violated)),
            RelevanceStatus::NotRelevantViolatedInRepaired);
  EXPECT_EQ(classify(verdict("d1", Status::Satisfied), verdict("d1", Status::Satisfied)),
            RelevanceStatus::NotRelevantSatisfiedInBoth);
  EXPECT_EQ(classify(verdict("d1", Status::Satisfied), verdict("d1", Status::Violated)),
            RelevanceStatus::DegenerateRegression);
  EXPECT_THROW(classify(verdict("d1", Status::Violated), verdict("d2", Status::Satisfied)), Error);
}

TEST(Classify, Names) {
  EXPECT_STREQ(to_string(RelevanceStatus::Relevant), "relevant");
  EXPECT_STREQ(to_string(RelevanceStatus::NotRelevantViolatedInRepaired), "not_relevant_violated_in_repaired");
  EXPECT_STREQ(to_string(RelevanceStatus::NotRelevantSatisfiedInBoth), "not_relevant_satisfied_in_both");
  EXPECT_STREQ(to_string(RelevanceStatus::DegenerateRegression), "degenerate_regression");
}

RelevanceReport fixture_report(const FixturePair& p, const Catalog& catalog) {
  const auto faulty = load_version("faulty", p.faulty_file, p.faulty_source, catalog);
  const auto repaired = load_version("repaired", p.repaired_file, p.repaired_source, catalog);
  return check_relevance(faulty, repaired, catalog);
}

TEST(CheckRelevance, FixturePairsHaveSingleRelevantDependency) {
  for (const auto& p : builtin_fixtures()) {
    const auto r = fixture_report(p, spidev());
    EXPECT_EQ(r.catalog_name, "spidev");
    EXPECT_EQ(r.faulty_program.path, p.faulty_file);
    EXPECT_EQ(r.faulty_program.sha256, sha256_hex(p.faulty_source));
    ASSERT_EQ(r.entries.size(), 26u);
    const std::vector<std::string> expected(p.expected_violated_faulty.begin(), p.expected_violated_faulty.end());
    EXPECT_EQ(r.relevant_set, expected) << p.name;
    EXPECT_EQ(r.relevant_set.size(), 1u);
    EXPECT_FALSE(r.has_regression());
    for (const auto& e : r.entries) {
      if (e.status == RelevanceStatus::Relevant) {
        EXPECT_TRUE(e.faulty.counterexample);
      } else {
        EXPECT_EQ(e.status, RelevanceStatus::NotRelevantSatisfiedInBoth);
      }
    }
  }
}

TEST(CheckRelevance, RestrictedCatalog) {
  const auto& accel = *std::find_if(builtin_fixtures().begin(), builtin_fixtures().end(),
                                    [](const auto& p) { return p.name == "accelerometer"; });
  const std::vector<std::string> only = {"d17"};
  const auto r = fixture_report(accel, spidev().restrict_to(only));
  ASSERT_EQ(r.entries.size(), 1u);
  EXPECT_EQ(r.relevant_set, only);
  const std::vector<std::string> other = {"d26"};
  EXPECT_TRUE(fixture_report(accel, spidev().restrict_to(other)).relevant_set.empty());
}

TEST(CheckRelevance, SwappedPairIsRegression) {
  for (const auto& p : builtin_fixtures()) {
    const auto faulty = load_version("faulty", p.repaired_file, p.repaired_source, spidev());
    const auto repaired = load_version("repaired", p.faulty_file, p.faulty_source, spidev());
    const auto r = check_relevance(faulty, repaired, spidev());
    EXPECT_TRUE(r.relevant_set.empty());
    EXPECT_TRUE(r.has_regression());
  }
}

TEST(CheckRelevance, ErrorsNameTheVersion) {
  try {
    load_version("repaired", "bad.c", "int main( {", spidev());
    FAIL();
  } catch (const VersionError& e) {
    EXPECT_EQ(e.version(), "repaired");
    EXPECT_EQ(std::string(e.what()).rfind("repaired: bad.c:", 0), 0u) << e.what();
  }
}

TEST(RelevanceProperty, SelfPairHasNoRelevantDependency) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Cfg cfg = build_cfg(generate_random_program(seed), spidev());
    const auto r = check_relevance(cfg, cfg, spidev());
    EXPECT_TRUE(r.relevant_set.empty());
    EXPECT_FALSE(r.has_regression());
  }
}

TEST(RelevanceProperty, SubsetCatalogsAgree) {
  std::mt19937_64 rng(23);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Cfg a = build_cfg(generate_random_program(seed), spidev());
    const Cfg b = build_cfg(generate_random_program(seed + 5000), spidev());
    const auto full = check_relevance(a, b, spidev());
    std::vector<std::string> ids;
    for (const auto& d : spidev().dependencies())
      if (rng() % 3 == 0) ids.push_back(d.id);
    const auto sub = check_relevance(a, b, spidev().restrict_to(ids));
    std::vector<std::string> expected;
    for (const auto& id : full.relevant_set)
      if (std::find(ids.begin(), ids.end(), id) != ids.end()) expected.push_back(id);
    EXPECT_EQ(sub.relevant_set, expected);
    for (const auto& e : sub.entries) {
      const auto it = std::find_if(full.entries.begin(), full.entries.end(),
                                   [&](const auto& f) { return f.dep_id == e.dep_id; });
      EXPECT_EQ(*it, e);
    }
    EXPECT_EQ(full, check_relevance(a, b, spidev()));
  }
}

TEST(RelevanceProperty, SwapExchangesRelevantAndRegression) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Cfg a = build_cfg(generate_random_program(seed), spidev());
    const Cfg b = build_cfg(generate_random_program(seed + 7000), spidev());
    const auto ab = check_relevance(a, b, spidev());
    const auto ba = check_relevance(b, a, spidev());
    for (std::size_t i = 0; i < ab.entries.size(); ++i) {
      const bool rel = ab.entries[i].status == RelevanceStatus::Relevant;
      EXPECT_EQ(rel, ba.entries[i].status == RelevanceStatus::DegenerateRegression);
    }
  }
}

}  // namespace
}  // namespace halcheck
