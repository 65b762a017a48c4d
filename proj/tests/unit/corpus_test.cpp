#include <gtest/gtest.h>

#include <fstream>

#include "cdprov/corpus.hpp"
#include "cdprov/dataset.hpp"
#include "cdprov/error.hpp"
#include "cdprov/evaluation.hpp"
#include "cdprov/xmi.hpp"
#include "test_support.hpp"

using namespace cdprov;
namespace fs = std::filesystem;

TEST(Profiles, DefaultsAreValid) {
  EXPECT_NO_THROW(check_profile(GeneratorProfile::default_fwcd()));
  EXPECT_NO_THROW(check_profile(GeneratorProfile::default_recd()));
  auto bad = GeneratorProfile::default_recd();
  bad.kindWeights[0] += 0.1;
  EXPECT_THROW(check_profile(bad), Error);
  bad = GeneratorProfile::default_recd();
  bad.opsPerClass = {4, 2};
  EXPECT_THROW(check_profile(bad), Error);
}

TEST(GenerateDiagram, FwcdParametersPerOperationAtMostOne) {
  for (std::uint64_t s = 0; s < 500; ++s) {
    const auto v = extract_features(generate_diagram(GeneratorProfile::default_fwcd(), s));
    EXPECT_LE(v.avgParaOper, 1.0);
  }
}

TEST(GenerateDiagram, Deterministic) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    EXPECT_EQ(generate_diagram(GeneratorProfile::default_recd(), s), generate_diagram(GeneratorProfile::default_recd(), s));
  }
  EXPECT_NE(generate_diagram(GeneratorProfile::default_recd(), 1), generate_diagram(GeneratorProfile::default_recd(), 2));
}

TEST(GenerateDiagram, RecdMeanParametersExceedFwcd) {
  double recd = 0, fwcd = 0, recd_sq = 0, fwcd_sq = 0;
  const int n = 1000;
  for (int s = 0; s < n; ++s) {
    const double r = extract_features(generate_diagram(GeneratorProfile::default_recd(), mix_seed(1, s))).avgParaOper;
    const double f = extract_features(generate_diagram(GeneratorProfile::default_fwcd(), mix_seed(2, s))).avgParaOper;
    recd += r;
    fwcd += f;
    recd_sq += r * r;
    fwcd_sq += f * f;
  }
  const double mr = recd / n, mf = fwcd / n;
  const double se = std::sqrt((recd_sq / n - mr * mr) / n + (fwcd_sq / n - mf * mf) / n);
  EXPECT_GT(mr, mf);
  EXPECT_GT((mr - mf) / se, 5.0) << "Welch t statistic";
}

TEST(GenerateDiagram, SeedFortyTwoRecdFixpoint) {
  const auto d = generate_diagram(GeneratorProfile::default_recd(), 42);
  const auto text = serialize_xmi(d);
  EXPECT_EQ(parse_xmi(text), d);
  EXPECT_EQ(serialize_xmi(parse_xmi(text)), text);
}

TEST(GenerateDiagrams, LabelCounts) {
  CorpusConfig cfg;
  std::size_t recd = 0;
  const auto diagrams = generate_diagrams(cfg);
  ASSERT_EQ(diagrams.size(), 999u);
  for (const auto& g : diagrams) recd += g.entry.label == Label::RECD;
  EXPECT_EQ(recd, 806u);

  cfg.total = 2;
  cfg.recdFraction = 0.5;
  const auto pair = generate_diagrams(cfg);
  ASSERT_EQ(pair.size(), 2u);
  EXPECT_NE(pair[0].entry.label, pair[1].entry.label);
}

TEST(GenerateDiagrams, ParallelMatchesSerial) {
  CorpusConfig cfg;
  cfg.total = 120;
  const auto serial = generate_diagrams(cfg);
  cfg.threads = 4;
  const auto parallel = generate_diagrams(cfg);
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(serial[i].entry, parallel[i].entry);
    EXPECT_EQ(serial[i].diagram, parallel[i].diagram);
  }
}

TEST(GenerateDiagrams, InvalidConfig) {
  CorpusConfig cfg;
  cfg.total = 1;
  EXPECT_THROW(generate_diagrams(cfg), Error);
  cfg.total = 10;
  cfg.recdFraction = 1.0;
  EXPECT_THROW(generate_diagrams(cfg), Error);
}

TEST(GenerateCorpus, FilesParseValidateAndRegenerateIdentically) {
  fixtures::TempDir dir;
  CorpusConfig cfg;
  cfg.total = 150;
  cfg.outputDirectory = dir / "a";
  const auto manifest = generate_corpus(cfg);
  ASSERT_EQ(manifest.size(), 150u);
  EXPECT_EQ(manifest.front().file, "d0001.xmi");
  EXPECT_EQ(manifest.back().file, "d0150.xmi");
  const auto labels_text = read_text_file(cfg.outputDirectory / "labels.csv");
  EXPECT_EQ(labels_text.substr(0, labels_text.find('\n')), "file,label");
  EXPECT_EQ(parse_manifest(labels_text), manifest);
  for (const auto& e : manifest) {
    const auto d = parse_xmi(read_text_file(cfg.outputDirectory / e.file));
    EXPECT_TRUE(validate(d).empty()) << e.file;
  }

  cfg.outputDirectory = dir / "b";
  generate_corpus(cfg);
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(dir / "a")) {
    ++files;
    EXPECT_EQ(read_text_file(entry.path()), read_text_file(dir / "b" / entry.path().filename())) << entry.path();
  }
  EXPECT_EQ(files, 151u);
}

TEST(GenerateCorpus, DefaultCorpusIsStumpSeparableOnExtOperPara) {
  CorpusConfig cfg;
  cfg.total = 300;
  Dataset ds(std::vector<FeatureSpec>{{"extOperPara", FeatureKind::Boolean}});
  for (const auto& g : generate_diagrams(cfg)) {
    ds.add_row(std::vector<double>{extract_features(g.diagram).extOperPara ? 1.0 : 0.0}, g.entry.label);
  }
  const auto stump = cross_validate({ClassifierKind::DecisionStump, {}}, ds, {10, 1, 1, 1});
  const auto zero = cross_validate({ClassifierKind::ZeroR, {}}, ds, {10, 1, 1, 1});
  EXPECT_GT(stump.accuracy, zero.accuracy);
}
