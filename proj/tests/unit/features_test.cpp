#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "cdprov/corpus.hpp"
#include "cdprov/dataset.hpp"
#include "cdprov/error.hpp"
#include "cdprov/features.hpp"
#include "test_support.hpp"

using namespace cdprov;

namespace {

void expect_invariants(const FeatureVector& v) {
  EXPECT_EQ(v.extOperPara, v.numPara > 0);
  EXPECT_EQ(v.extOrpCls, v.numOrpCls > 0);
  EXPECT_LE(v.numOrpCls, v.numCls);
  EXPECT_LE(v.maxOperCls, v.numOper);
  EXPECT_LE(v.maxAttrCls, v.numAttr);
  if (v.numOper > 0) {
    EXPECT_LT(std::abs(v.avgParaOper * static_cast<double>(v.numOper) - static_cast<double>(v.numPara)), 1e-9);
  } else {
    EXPECT_EQ(v.avgParaOper, 0.0);
  }
  ASSERT_GT(v.numCls, 0);
  const double n = static_cast<double>(v.numCls);
  EXPECT_DOUBLE_EQ(v.avgOperCls, static_cast<double>(v.numOper) / n);
  EXPECT_DOUBLE_EQ(v.avgAttrCls, static_cast<double>(v.numAttr) / n);
  EXPECT_DOUBLE_EQ(v.avgAssocCls, static_cast<double>(v.numAssoc) / n);
  EXPECT_DOUBLE_EQ(v.avgOrpCls, static_cast<double>(v.numOrpCls) / n);
  EXPECT_GE(v.avgOrpCls, 0.0);
  EXPECT_LE(v.avgOrpCls, 1.0);
  EXPECT_GE(v.numAssocType, 0);
  EXPECT_LE(v.numAssocType, 6);
}

long brute_force_orphans(const ClassDiagram& d) {
  long n = 0;
  for (const auto& c : d.classes) {
    bool touched = false;
    for (const auto& r : d.relationships) touched = touched || r.sourceId == c.id || r.targetId == c.id;
    n += touched ? 0 : 1;
  }
  return n;
}

}  // namespace

TEST(FeatureNames, CanonicalOrder) {
  const auto names = feature_names();
  ASSERT_EQ(names.size(), 16u);
  EXPECT_EQ(names.front(), "avgParaOper");
  EXPECT_EQ(names.back(), "numAssocType");
  const std::vector<std::string_view> expected{
      "avgParaOper", "numPara",  "extOperPara", "avgOperCls", "maxOperCls", "avgAssocCls",
      "numCls",      "numAssoc", "numOper",     "numOrpCls",  "avgOrpCls",  "avgAttrCls",
      "numAttr",     "maxAttrCls", "extOrpCls", "numAssocType"};
  EXPECT_TRUE(std::equal(names.begin(), names.end(), expected.begin()));
}

TEST(ExtractFeatures, DegenerateSingleClass) {
  ClassDiagram d{"d", {{"a", "A", {}, {}}}, {}};
  const auto v = extract_features(d);
  EXPECT_EQ(v.numCls, 1);
  EXPECT_EQ(v.numOrpCls, 1);
  EXPECT_TRUE(v.extOrpCls);
  EXPECT_EQ(v.avgOrpCls, 1.0);
  EXPECT_EQ(v.numAttr + v.numOper + v.numPara + v.numAssoc + v.numAssocType + v.maxAttrCls + v.maxOperCls, 0);
  EXPECT_EQ(v.avgParaOper + v.avgOperCls + v.avgAssocCls + v.avgAttrCls, 0.0);
  EXPECT_FALSE(v.extOperPara);

  const auto row = to_row(v);
  EXPECT_EQ(row[6], 1.0);  // numCls
  EXPECT_EQ(row[8], 0.0);  // numOper
}

TEST(ExtractFeatures, ThreeClassExample) {
  const auto v = extract_features(fixtures::three_class_diagram());
  EXPECT_EQ(v.numCls, 3);
  EXPECT_EQ(v.numAttr, 3);
  EXPECT_EQ(v.numOper, 3);
  EXPECT_EQ(v.numPara, 4);
  EXPECT_NEAR(v.avgParaOper, 4.0 / 3.0, 1e-12);
  EXPECT_TRUE(v.extOperPara);
  EXPECT_DOUBLE_EQ(v.avgOperCls, 1.0);
  EXPECT_EQ(v.maxOperCls, 2);
  EXPECT_EQ(v.numAssoc, 1);
  EXPECT_NEAR(v.avgAssocCls, 1.0 / 3.0, 1e-12);
  EXPECT_EQ(v.numOrpCls, 1);
  EXPECT_NEAR(v.avgOrpCls, 1.0 / 3.0, 1e-12);
  EXPECT_TRUE(v.extOrpCls);
  EXPECT_DOUBLE_EQ(v.avgAttrCls, 1.0);
  EXPECT_EQ(v.maxAttrCls, 2);
  EXPECT_EQ(v.numAssocType, 1);
  EXPECT_EQ(format_value(to_row(v)[0], FeatureKind::Ratio), "1.3333");
}

TEST(ExtractFeatures, GeneralizationConnectsOrphan) {
  auto d = fixtures::three_class_diagram();
  d.relationships.push_back({RelationshipKind::Generalization, "C", "A", std::nullopt});
  const auto v = extract_features(d);
  EXPECT_EQ(v.numAssoc, 2);
  EXPECT_EQ(v.numAssocType, 2);
  EXPECT_EQ(v.numOrpCls, 0);
  EXPECT_FALSE(v.extOrpCls);
}

TEST(ExtractFeatures, SelfLoopAndDuplicates) {
  ClassDiagram d{"d", {{"a", "A", {}, {}}, {"b", "B", {}, {}}},
                 {{RelationshipKind::Dependency, "a", "a", std::nullopt},
                  {RelationshipKind::Dependency, "a", "a", std::nullopt}}};
  const auto v = extract_features(d);
  EXPECT_EQ(v.numAssoc, 2);
  EXPECT_EQ(v.numAssocType, 1);
  EXPECT_EQ(v.numOrpCls, 1);
}

TEST(ExtractFeatures, EmptyDiagramRejected) {
  try {
    extract_features(ClassDiagram{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyDiagram);
  }
}

TEST(ExtractFeatures, PermutationInvariance) {
  for (std::uint64_t s = 0; s < 300; ++s) {
    auto d = fixtures::random_diagram(s, 10);
    const auto before = extract_features(d);
    Rng rng(mix_seed(s, 99));
    rng.shuffle(std::span(d.classes));
    rng.shuffle(std::span(d.relationships));
    EXPECT_EQ(extract_features(d), before) << s;
  }
}

TEST(ExtractFeatures, AddingParameterOnlyMovesParameterFeatures) {
  int checked = 0;
  for (std::uint64_t s = 0; s < 300; ++s) {
    auto d = fixtures::random_diagram(s, 8);
    std::vector<std::pair<std::size_t, std::size_t>> ops;
    for (std::size_t c = 0; c < d.classes.size(); ++c)
      for (std::size_t o = 0; o < d.classes[c].operations.size(); ++o) ops.emplace_back(c, o);
    if (ops.empty()) continue;
    const auto before = extract_features(d);
    Rng rng(s);
    const auto [c, o] = ops[rng.below(ops.size())];
    d.classes[c].operations[o].parameters.push_back({"extra", std::nullopt});
    auto after = extract_features(d);
    EXPECT_EQ(after.numPara, before.numPara + 1);
    EXPECT_TRUE(after.extOperPara);
    EXPECT_NEAR(after.avgParaOper, static_cast<double>(after.numPara) / static_cast<double>(after.numOper), 1e-12);
    after.numPara = before.numPara;
    after.avgParaOper = before.avgParaOper;
    after.extOperPara = before.extOperPara;
    EXPECT_EQ(after, before);
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(ExtractFeatures, OrphanCountMatchesBruteForce) {
  for (std::uint64_t s = 0; s < 500; ++s) {
    const auto d = fixtures::random_diagram(mix_seed(3, s), 10);
    EXPECT_EQ(extract_features(d).numOrpCls, brute_force_orphans(d)) << s;
  }
}

TEST(ExtractFeatures, InvariantsOnRandomDiagrams) {
  for (std::uint64_t s = 0; s < 300; ++s) expect_invariants(extract_features(fixtures::random_diagram(s, 10)));
}

TEST(ExtractFeatures, InvariantsOnGeneratedDiagrams) {
  for (std::uint64_t s = 0; s < 400; ++s) {
    const auto& profile = s % 2 ? GeneratorProfile::default_recd() : GeneratorProfile::default_fwcd();
    expect_invariants(extract_features(generate_diagram(profile, mix_seed(21, s))));
  }
}

TEST(FeatureRow, RoundTrip) {
  const auto v = extract_features(fixtures::three_class_diagram());
  const auto row = to_row(v);
  EXPECT_EQ(from_row(row), v);
  const auto kinds = feature_kinds();
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    if (kinds[i] == FeatureKind::Boolean) EXPECT_TRUE(row[i] == 0.0 || row[i] == 1.0);
  }
}
