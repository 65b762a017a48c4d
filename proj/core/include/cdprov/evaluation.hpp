#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cdprov/classifiers.hpp"

namespace cdprov {

/// RECD is the positive class.
struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const noexcept { return tp + fp + tn + fn; }
  void add(Label actual, Label predicted) noexcept;
  ConfusionMatrix& operator+=(const ConfusionMatrix& o) noexcept;
  /// The same counts seen with FwCD as the positive class.
  ConfusionMatrix flipped() const noexcept { return {tn, fn, tp, fp}; }

  bool operator==(const ConfusionMatrix&) const = default;
};

struct Metrics {
  double accuracy = 0;   // percent
  double precision = 0;  // 1 when nothing was predicted positive
  double recall = 0;     // 1 when there are no positives
  double f1 = 0;         // 0 when precision + recall == 0
};

Metrics compute_metrics(const ConfusionMatrix& cm);

/// Mann-Whitney statistic over average ranks: the probability that a random
/// RECD row scores above a random FwCD row, ties counting one half.
/// Throws SingleClassLabels unless both labels occur.
double roc_auc(std::span<const double> scores, std::span<const Label> labels);

struct CvConfig {
  std::size_t folds = 10;
  std::size_t repeats = 10;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct FoldResult {
  std::size_t repeat = 0;
  std::size_t fold = 0;
  ConfusionMatrix cm;
};

struct ClassMetrics {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

struct MetricsReport {
  ClassifierSpec spec;
  CvConfig config;
  // Pooled within each repeat, then averaged across repeats.
  double accuracy = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  double auc = 0;
  ClassMetrics recd;
  ClassMetrics fwcd;
  ClassMetrics macro;
  std::vector<FoldResult> folds;  // repeat-major, fold-minor
};

/// Repeat r deals folds with mix_seed(seed, r); the model for fold f trains
/// with mix_seed(fold seed, f). Fold jobs may run on config.threads workers;
/// results are merged in fold order.
MetricsReport cross_validate(const ClassifierSpec& spec, const Dataset& ds, const CvConfig& config);

struct RenderedReport {
  std::string text;
  std::string csv;
};

/// One row per classifier in kind order with Accuracy, Precision, Recall,
/// F Measure, AUC at two decimals. perClass adds per-class and macro columns.
RenderedReport render_report(std::vector<MetricsReport> reports, bool perClass = false);

/// `classifier,repeat,fold,tp,fp,tn,fn,seed`
std::string render_folds_csv(const std::vector<MetricsReport>& reports);

}  // namespace cdprov
