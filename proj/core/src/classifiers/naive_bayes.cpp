#include <algorithm>
#include <cmath>
#include <numbers>

#include "cdprov/classifiers.hpp"

namespace cdprov::detail {
namespace {

constexpr double kVarianceFloor = 1e-6;

}  // namespace

NaiveBayesModel train_naive_bayes(const Dataset& ds) {
  NaiveBayesModel m;
  m.classCounts = ds.class_counts();
  const std::size_t features = ds.feature_count();
  m.gaussians.resize(features);
  m.levelCounts.resize(features);
  m.nominal.resize(features);

  for (std::size_t f = 0; f < features; ++f) {
    m.nominal[f] = ds.schema()[f].kind == FeatureKind::Boolean;
    if (m.nominal[f]) {
      auto& levels = m.levelCounts[f];
      for (std::size_t i = 0; i < ds.size(); ++i) ++levels[index_of(ds.label(i))][ds.at(i, f) != 0.0 ? 1 : 0];
      continue;
    }
    std::array<double, kLabelCount> sum{}, sq{};
    for (std::size_t i = 0; i < ds.size(); ++i) sum[index_of(ds.label(i))] += ds.at(i, f);
    for (auto l : kAllLabels) {
      const auto n = static_cast<double>(m.classCounts[index_of(l)]);
      m.gaussians[f][index_of(l)].mean = n > 0 ? sum[index_of(l)] / n : 0.0;
    }
    for (std::size_t i = 0; i < ds.size(); ++i) {
      const auto c = index_of(ds.label(i));
      const double d = ds.at(i, f) - m.gaussians[f][c].mean;
      sq[c] += d * d;
    }
    for (auto l : kAllLabels) {
      const auto n = static_cast<double>(m.classCounts[index_of(l)]);
      m.gaussians[f][index_of(l)].variance = std::max(n > 0 ? sq[index_of(l)] / n : 0.0, kVarianceFloor);
    }
  }
  return m;
}

double naive_bayes_recd(const NaiveBayesModel& m, std::span<const double> row) {
  const auto total = static_cast<double>(m.classCounts[0] + m.classCounts[1]);
  std::array<double, kLabelCount> log_post{};
  for (auto l : kAllLabels) {
    const auto c = index_of(l);
    const auto n = static_cast<double>(m.classCounts[c]);
    double lp = std::log((n + 1.0) / (total + 2.0));
    for (std::size_t f = 0; f < row.size(); ++f) {
      if (m.nominal[f]) {
        const auto level = row[f] != 0.0 ? 1 : 0;
        lp += std::log((static_cast<double>(m.levelCounts[f][c][level]) + 1.0) / (n + 2.0));
      } else {
        const auto& g = m.gaussians[f][c];
        const double d = row[f] - g.mean;
        lp += -0.5 * std::log(2.0 * std::numbers::pi * g.variance) - d * d / (2.0 * g.variance);
      }
    }
    log_post[c] = lp;
  }
  const double diff = log_post[index_of(Label::FwCD)] - log_post[index_of(Label::RECD)];
  return 1.0 / (1.0 + std::exp(diff));
}

}  // namespace cdprov::detail
