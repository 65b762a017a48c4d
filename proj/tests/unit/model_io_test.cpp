#include <gtest/gtest.h>

#include <fstream>

#include "cdprov/classifiers.hpp"
#include "cdprov/corpus.hpp"
#include "cdprov/error.hpp"
#include "test_support.hpp"
#include "json.hpp"

using namespace cdprov;

namespace {

Dataset corpus_dataset(std::size_t total, std::uint64_t seed) {
  CorpusConfig cfg;
  cfg.total = total;
  cfg.seed = seed;
  Dataset ds;
  for (const auto& g : generate_diagrams(cfg)) ds.add_row(to_row(extract_features(g.diagram)), g.entry.label);
  return ds;
}

std::vector<FeatureRow> random_rows(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<FeatureRow> rows(n);
  const auto kinds = feature_kinds();
  for (auto& row : rows) {
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      switch (kinds[f]) {
        case FeatureKind::Boolean: row[f] = static_cast<double>(rng.below(2)); break;
        case FeatureKind::Count: row[f] = static_cast<double>(rng.below(60)); break;
        case FeatureKind::Ratio: row[f] = rng.uniform(0, 6); break;
      }
    }
  }
  return rows;
}

ErrorCode load_code(std::string_view text) {
  try {
    model_from_json(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(ModelIo, EveryKindRoundTripsExactly) {
  const auto ds = corpus_dataset(200, 13);
  const auto queries = random_rows(50, 1);
  fixtures::TempDir dir;
  for (auto kind : kAllClassifierKinds) {
    ClassifierSpec spec{kind, {}};
    spec.hp.forestTrees = 15;
    const auto model = train(spec, ds, 21);
    const auto path = dir / (std::string(to_string(kind)) + ".json");
    save_model(model, path);
    const auto back = load_model(path);
    EXPECT_EQ(back.spec.kind, kind);
    EXPECT_EQ(back.seed, 21u);
    EXPECT_EQ(back.schema, model.schema);
    EXPECT_EQ(back.norm, model.norm);
    for (const auto& q : queries) EXPECT_EQ(predict_proba(back, q), predict_proba(model, q)) << to_string(kind);
    EXPECT_EQ(model_to_json(back), model_to_json(model));
  }
}

TEST(ModelIo, HundredTreeForest) {
  const auto ds = corpus_dataset(300, 2);
  const auto model = train(ClassifierSpec{ClassifierKind::RandomForest, {}}, ds, 7);
  ASSERT_EQ(std::get<ForestModel>(model.structure).trees.size(), 100u);
  const auto back = model_from_json(model_to_json(model));
  for (const auto& q : random_rows(50, 3)) EXPECT_EQ(predict_proba(back, q), predict_proba(model, q));
}

TEST(ModelIo, DocumentedLayout) {
  ClassifierSpec spec{ClassifierKind::RandomForest, {}};
  spec.hp.forestTrees = 2;
  const auto model = train(spec, corpus_dataset(60, 4), 3);
  const auto j = nlohmann::json::parse(model_to_json(model));
  EXPECT_EQ(j.at("formatVersion"), kModelFormatVersion);
  EXPECT_EQ(j.at("kind"), "random_forest");
  EXPECT_EQ(j.at("featureNames").size(), 16u);
  EXPECT_EQ(j.at("featureNames")[0], "avgParaOper");
  EXPECT_EQ(j.at("hyperparameters").at("forestTrees"), 2);
  const auto& root = j.at("structure").at("trees")[0];
  for (const char* key : {"featureIndex", "threshold", "left", "right", "leafCounts"}) EXPECT_TRUE(root.contains(key)) << key;
}

TEST(ModelIo, VersionMismatch) {
  const auto model = train(ClassifierSpec{ClassifierKind::ZeroR, {}}, corpus_dataset(20, 1), 1);
  auto j = nlohmann::json::parse(model_to_json(model));
  j["formatVersion"] = kModelFormatVersion + 1;
  EXPECT_EQ(load_code(j.dump()), ErrorCode::VersionMismatch);
}

TEST(ModelIo, CorruptInputs) {
  EXPECT_EQ(load_code("not json"), ErrorCode::CorruptModel);
  EXPECT_EQ(load_code("{}"), ErrorCode::CorruptModel);
  const auto model = train(ClassifierSpec{ClassifierKind::OneR, {}}, corpus_dataset(40, 1), 1);
  auto j = nlohmann::json::parse(model_to_json(model));
  j["kind"] = "svm";
  EXPECT_EQ(load_code(j.dump()), ErrorCode::CorruptModel);
  j = nlohmann::json::parse(model_to_json(model));
  j.erase("structure");
  EXPECT_EQ(load_code(j.dump()), ErrorCode::CorruptModel);
  fixtures::TempDir dir;
  try {
    load_model(dir / "absent.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CorruptModel);
  }
}
