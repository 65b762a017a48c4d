#include "cdprov/evaluation.hpp"

#include <algorithm>
#include <numeric>

#include "cdprov/error.hpp"
#include "cdprov/parallel.hpp"
#include "cdprov/random.hpp"

namespace cdprov {

void ConfusionMatrix::add(Label actual, Label predicted) noexcept {
  if (actual == Label::RECD) {
    ++(predicted == Label::RECD ? tp : fn);
  } else {
    ++(predicted == Label::RECD ? fp : tn);
  }
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& o) noexcept {
  tp += o.tp;
  fp += o.fp;
  tn += o.tn;
  fn += o.fn;
  return *this;
}

Metrics compute_metrics(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw Error(ErrorCode::InvalidArgument, "confusion matrix is empty");
  const auto d = [](std::size_t x) { return static_cast<double>(x); };
  Metrics m;
  m.accuracy = d(cm.tp + cm.tn) / d(cm.total()) * 100.0;
  m.precision = cm.tp + cm.fp == 0 ? 1.0 : d(cm.tp) / d(cm.tp + cm.fp);
  m.recall = cm.tp + cm.fn == 0 ? 1.0 : d(cm.tp) / d(cm.tp + cm.fn);
  m.f1 = m.precision + m.recall == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / (m.precision + m.recall);
  return m;
}

double roc_auc(std::span<const double> scores, std::span<const Label> labels) {
  if (scores.size() != labels.size()) throw Error(ErrorCode::InvalidArgument, "scores and labels differ in length");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return scores[a] < scores[b]; });

  double positive_rank_sum = 0;
  std::size_t positives = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double average_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t t = i; t < j; ++t) {
      if (labels[order[t]] == Label::RECD) {
        positive_rank_sum += average_rank;
        ++positives;
      }
    }
    i = j;
  }
  const std::size_t negatives = scores.size() - positives;
  if (positives == 0 || negatives == 0) {
    throw Error(ErrorCode::SingleClassLabels, "AUC needs both RECD and FwCD rows");
  }
  const auto np = static_cast<double>(positives);
  const auto nn = static_cast<double>(negatives);
  return (positive_rank_sum - np * (np + 1.0) / 2.0) / (np * nn);
}

namespace {

ClassMetrics class_metrics(const ConfusionMatrix& cm) {
  const auto m = compute_metrics(cm);
  return {m.precision, m.recall, m.f1};
}

}  // namespace

MetricsReport cross_validate(const ClassifierSpec& spec, const Dataset& ds, const CvConfig& config) {
  if (config.folds < 2) throw Error(ErrorCode::InvalidArgument, "folds must be at least 2");
  if (config.repeats < 1) throw Error(ErrorCode::InvalidArgument, "repeats must be at least 1");
  check_spec(spec);

  MetricsReport report;
  report.spec = spec;
  report.config = config;

  for (std::size_t r = 0; r < config.repeats; ++r) {
    const std::uint64_t fold_seed = mix_seed(config.seed, r);
    const FoldAssignment assignment = stratified_folds(ds, config.folds, fold_seed);

    std::vector<double> scores(ds.size());
    std::vector<Label> predicted(ds.size());
    parallel_for(config.folds, config.threads, [&](std::size_t f) {
      const auto train_rows = assignment.train_rows(f);
      const Dataset training = ds.subset(train_rows);
      const TrainedModel model = train(spec, training, mix_seed(fold_seed, f));
      for (auto row : assignment.test_rows(f)) {
        const auto p = predict_proba(model, ds.row(row));
        scores[row] = p.probRECD;
        predicted[row] = p.label;
      }
    });

    ConfusionMatrix pooled;
    for (std::size_t f = 0; f < config.folds; ++f) {
      FoldResult fr{r, f, {}};
      for (auto row : assignment.test_rows(f)) fr.cm.add(ds.label(row), predicted[row]);
      pooled += fr.cm;
      report.folds.push_back(fr);
    }

    const auto m = compute_metrics(pooled);
    const auto recd = class_metrics(pooled);
    const auto fwcd = class_metrics(pooled.flipped());
    report.accuracy += m.accuracy;
    report.precision += m.precision;
    report.recall += m.recall;
    report.f1 += m.f1;
    report.auc += roc_auc(scores, ds.labels());
    report.recd.precision += recd.precision;
    report.recd.recall += recd.recall;
    report.recd.f1 += recd.f1;
    report.fwcd.precision += fwcd.precision;
    report.fwcd.recall += fwcd.recall;
    report.fwcd.f1 += fwcd.f1;
  }

  const auto n = static_cast<double>(config.repeats);
  for (double* v : {&report.accuracy, &report.precision, &report.recall, &report.f1, &report.auc,
                    &report.recd.precision, &report.recd.recall, &report.recd.f1, &report.fwcd.precision,
                    &report.fwcd.recall, &report.fwcd.f1}) {
    *v /= n;
  }
  report.macro = {(report.recd.precision + report.fwcd.precision) / 2.0,
                  (report.recd.recall + report.fwcd.recall) / 2.0, (report.recd.f1 + report.fwcd.f1) / 2.0};
  return report;
}

}  // namespace cdprov
