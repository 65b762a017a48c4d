#include <gtest/gtest.h>

#include <fstream>
#include <map>

#include "cdprov/corpus.hpp"
#include "cdprov/dataset.hpp"
#include "cdprov/error.hpp"
#include "test_support.hpp"

using namespace cdprov;

namespace {

constexpr std::string_view kHeader =
    "avgParaOper,numPara,extOperPara,avgOperCls,maxOperCls,avgAssocCls,numCls,numAssoc,numOper,"
    "numOrpCls,avgOrpCls,avgAttrCls,numAttr,maxAttrCls,extOrpCls,numAssocType,label\n";

constexpr std::string_view kRow1 = "1.3333,4,true,1.0000,2,0.3333,3,1,3,1,0.3333,1.0000,3,2,true,1,RECD\n";
constexpr std::string_view kRow2 = "0.0000,0,false,0.0000,0,0.0000,1,0,0,1,1.0000,0.0000,0,0,true,0,FwCD\n";

ErrorCode parse_code(std::string_view text, std::string* message = nullptr) {
  try {
    parse_csv(text);
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::InvalidArgument;
}

Dataset synthetic(std::size_t recd, std::size_t fwcd) {
  Dataset ds;
  FeatureRow row{};
  for (std::size_t i = 0; i < recd + fwcd; ++i) {
    row[0] = static_cast<double>(i % 7);
    row[6] = 1.0 + static_cast<double>(i % 5);
    ds.add_row(row, i < recd ? Label::RECD : Label::FwCD);
  }
  return ds;
}

}  // namespace

TEST(Labels, StringForms) {
  EXPECT_EQ(to_string(Label::FwCD), "FwCD");
  EXPECT_EQ(parse_label("RECD"), Label::RECD);
  EXPECT_FALSE(parse_label("fw").has_value());
  EXPECT_EQ(other(Label::FwCD), Label::RECD);
}

TEST(Csv, ParsesTwoRows) {
  const auto ds = parse_csv(std::string(kHeader) + std::string(kRow1) + std::string(kRow2));
  ASSERT_EQ(ds.size(), 2u);
  EXPECT_EQ(ds.label(0), Label::RECD);
  EXPECT_EQ(ds.label(1), Label::FwCD);
  EXPECT_DOUBLE_EQ(ds.at(0, 0), 1.3333);
  EXPECT_EQ(ds.at(0, 2), 1.0);
  EXPECT_EQ(ds.at(1, 2), 0.0);
}

TEST(Csv, ToleratesCrLf) {
  std::string text = std::string(kHeader) + std::string(kRow1);
  std::string crlf;
  for (char c : text) {
    if (c == '\n') crlf += '\r';
    crlf += c;
  }
  EXPECT_EQ(parse_csv(crlf), parse_csv(text));
}

TEST(Csv, SwappedHeaderRejected) {
  std::string header(kHeader);
  header.replace(0, std::string_view("avgParaOper,numPara").size(), "numPara,avgParaOper");
  EXPECT_EQ(parse_code(header + std::string(kRow1)), ErrorCode::BadHeader);
  EXPECT_EQ(parse_code(""), ErrorCode::BadHeader);
}

TEST(Csv, BadLabelNamesRowAndColumn) {
  std::string row(kRow1);
  row.replace(row.find("RECD"), 4, "fw");
  std::string message;
  EXPECT_EQ(parse_code(std::string(kHeader) + row, &message), ErrorCode::BadValue);
  EXPECT_NE(message.find("line 2"), std::string::npos) << message;
  EXPECT_NE(message.find("label"), std::string::npos) << message;
}

TEST(Csv, BadValues) {
  std::string non_numeric(kRow1);
  non_numeric.replace(0, 6, "abc");
  EXPECT_EQ(parse_code(std::string(kHeader) + non_numeric), ErrorCode::BadValue);
  std::string fractional_count(kRow1);
  fractional_count.replace(fractional_count.find(",4,"), 3, ",4.5,");
  EXPECT_EQ(parse_code(std::string(kHeader) + fractional_count), ErrorCode::BadValue);
  std::string bad_bool(kRow1);
  bad_bool.replace(bad_bool.find("true"), 4, "yes");
  EXPECT_EQ(parse_code(std::string(kHeader) + bad_bool), ErrorCode::BadValue);
}

TEST(Csv, RaggedRow) {
  EXPECT_EQ(parse_code(std::string(kHeader) + "1.0,2,true\n"), ErrorCode::RaggedRow);
}

TEST(Csv, EmptyDatasetIsHeaderOnly) {
  EXPECT_EQ(format_csv(Dataset{}), kHeader);
  EXPECT_TRUE(parse_csv(kHeader).empty());
}

TEST(Csv, ThreeClassVectorRow) {
  Dataset ds;
  ds.add_row(to_row(extract_features(fixtures::three_class_diagram())), Label::RECD);
  const auto text = format_csv(ds);
  EXPECT_EQ(text, std::string(kHeader) + std::string(kRow1));
  EXPECT_EQ(format_csv(parse_csv(text)), text);
}

TEST(Csv, FileRoundTripOn999Diagrams) {
  CorpusConfig cfg;
  Dataset ds;
  for (const auto& g : generate_diagrams(cfg)) ds.add_row(to_row(extract_features(g.diagram)), g.entry.label);
  ASSERT_EQ(ds.size(), 999u);
  fixtures::TempDir dir;
  save_csv(ds, dir / "f.csv");
  const auto back = load_csv(dir / "f.csv");
  ASSERT_EQ(back.size(), ds.size());
  EXPECT_EQ(back.labels(), ds.labels());
  const auto kinds = feature_kinds();
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      const double tol = kinds[f] == FeatureKind::Ratio ? 5e-5 + 1e-12 : 0.0;
      ASSERT_NEAR(back.at(i, f), ds.at(i, f), tol) << i << "," << f;
    }
  }
  EXPECT_EQ(format_csv(back), format_csv(ds));
}

TEST(Csv, IoErrors) {
  fixtures::TempDir dir;
  try {
    load_csv(dir / "missing.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ReadFailed);
  }
  try {
    save_csv(Dataset{}, dir / "no" / "such" / "dir" / "f.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WriteFailed);
  }
}

TEST(FeatureMatrix, RejectsNonBinaryBoolean) {
  Dataset ds;
  FeatureRow row{};
  row[2] = 0.5;
  EXPECT_THROW(ds.add_row(row, Label::RECD), Error);
  const std::vector<double> short_row(3, 0.0);
  EXPECT_THROW(ds.add_row(short_row, Label::RECD), Error);
}

TEST(Folds, ExactStratificationSmall) {
  const auto ds = synthetic(8, 2);
  const auto folds = stratified_folds(ds, 2, 1);
  for (std::size_t f = 0; f < 2; ++f) {
    std::size_t recd = 0, fw = 0;
    for (auto r : folds.test_rows(f)) (ds.label(r) == Label::RECD ? recd : fw)++;
    EXPECT_EQ(recd, 4u);
    EXPECT_EQ(fw, 1u);
  }
  EXPECT_EQ(stratified_folds(ds, 2, 1), folds);
}

TEST(Folds, Counts999) {
  const auto ds = synthetic(806, 193);
  for (std::uint64_t seed : {1u, 7u, 12345u}) {
    const auto folds = stratified_folds(ds, 10, seed);
    for (std::size_t f = 0; f < 10; ++f) {
      std::size_t recd = 0, fw = 0;
      for (auto r : folds.test_rows(f)) (ds.label(r) == Label::RECD ? recd : fw)++;
      EXPECT_TRUE(recd == 80 || recd == 81) << recd;
      EXPECT_TRUE(fw == 19 || fw == 20) << fw;
    }
  }
}

TEST(Folds, PartitionAndBalanceProperty) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 2 + rng.below(9);
    const std::size_t recd = k + rng.below(60);
    const std::size_t fw = k + rng.below(40);
    std::vector<Label> labels(recd, Label::RECD);
    labels.insert(labels.end(), fw, Label::FwCD);
    rng.shuffle(std::span(labels));
    const auto folds = stratified_folds(labels, k, rng.next());
    std::vector<int> seen(labels.size(), 0);
    std::map<std::pair<std::size_t, Label>, std::size_t> per;
    for (std::size_t f = 0; f < k; ++f) {
      for (auto r : folds.test_rows(f)) {
        ++seen[r];
        ++per[{f, labels[r]}];
      }
      EXPECT_EQ(folds.test_rows(f).size() + folds.train_rows(f).size(), labels.size());
    }
    for (int s : seen) EXPECT_EQ(s, 1);
    for (auto label : kAllLabels) {
      std::size_t lo = SIZE_MAX, hi = 0;
      for (std::size_t f = 0; f < k; ++f) {
        lo = std::min(lo, per[{f, label}]);
        hi = std::max(hi, per[{f, label}]);
      }
      EXPECT_LE(hi - lo, 1u);
    }
  }
}

TEST(Folds, Errors) {
  const auto ds = synthetic(8, 2);
  try {
    stratified_folds(ds, 3, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooFewPerClass);
  }
  EXPECT_THROW(stratified_folds(ds, 1, 1), Error);
}

TEST(Norm, Examples) {
  FeatureMatrix m({{"x", FeatureKind::Count}, {"c", FeatureKind::Count}, {"b", FeatureKind::Boolean}});
  m.add_row(std::vector<double>{2, 3, 1});
  m.add_row(std::vector<double>{4, 3, 0});
  m.add_row(std::vector<double>{6, 3, 1});
  const std::vector<std::size_t> rows{0, 1, 2};
  const auto stats = fit_norm(m, rows);
  EXPECT_EQ(apply_norm(stats, m.row(0)), (std::vector<double>{0, 0, 1}));
  EXPECT_EQ(apply_norm(stats, m.row(1)), (std::vector<double>{0.5, 0, 0}));
  EXPECT_EQ(apply_norm(stats, m.row(2)), (std::vector<double>{1, 0, 1}));
  EXPECT_EQ(apply_norm(stats, std::vector<double>{8, 9, 0}), (std::vector<double>{1, 0, 0}));
  EXPECT_EQ(apply_norm(stats, std::vector<double>{-1, 0, 0})[0], 0.0);
}

TEST(Norm, FitsSelectedRowsOnly) {
  FeatureMatrix m({{"x", FeatureKind::Ratio}});
  for (double v : {1.0, 100.0, 3.0}) m.add_row(std::vector<double>{v});
  const std::vector<std::size_t> rows{0, 2};
  const auto stats = fit_norm(m, rows);
  EXPECT_EQ(stats.min[0], 1.0);
  EXPECT_EQ(stats.max[0], 3.0);
}
