#include "cdprov/infogain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "cdprov/error.hpp"

namespace cdprov {
namespace {

struct ValueGroup {
  double value;
  ClassCounts counts;
};

std::size_t total(const ClassCounts& c) { return c[0] + c[1]; }

std::size_t classes_present(const ClassCounts& c) {
  return static_cast<std::size_t>(c[0] > 0) + static_cast<std::size_t>(c[1] > 0);
}

ClassCounts add(ClassCounts a, const ClassCounts& b) {
  a[0] += b[0];
  a[1] += b[1];
  return a;
}

bool is_boundary(const ValueGroup& a, const ValueGroup& b) {
  const bool same_pure_class = classes_present(a.counts) == 1 && classes_present(b.counts) == 1 &&
                               (a.counts[0] > 0) == (b.counts[0] > 0);
  return !same_pure_class;
}

void split_range(std::span<const ValueGroup> groups, std::vector<double>& cuts) {
  if (groups.size() < 2) return;
  ClassCounts all{};
  for (const auto& g : groups) all = add(all, g.counts);
  const auto n = static_cast<double>(total(all));
  const double h_all = entropy(all);
  if (h_all == 0.0) return;

  std::size_t best_split = 0;  // groups [0, best_split) go left
  double best_entropy = INFINITY;
  ClassCounts best_left{}, best_right{};
  ClassCounts left{};
  for (std::size_t g = 0; g + 1 < groups.size(); ++g) {
    left = add(left, groups[g].counts);
    if (!is_boundary(groups[g], groups[g + 1])) continue;
    const ClassCounts right{all[0] - left[0], all[1] - left[1]};
    const double e = (static_cast<double>(total(left)) * entropy(left) +
                      static_cast<double>(total(right)) * entropy(right)) / n;
    if (e < best_entropy) {
      best_entropy = e;
      best_split = g + 1;
      best_left = left;
      best_right = right;
    }
  }
  if (best_split == 0) return;

  const double gain = h_all - best_entropy;
  const auto k = static_cast<double>(classes_present(all));
  const auto k1 = static_cast<double>(classes_present(best_left));
  const auto k2 = static_cast<double>(classes_present(best_right));
  const double delta = std::log2(std::pow(3.0, k) - 2.0) -
                       (k * h_all - k1 * entropy(best_left) - k2 * entropy(best_right));
  const double threshold = (std::log2(n - 1.0) + delta) / n;
  if (!(gain > threshold)) return;

  split_range(groups.first(best_split), cuts);
  cuts.push_back((groups[best_split - 1].value + groups[best_split].value) / 2.0);
  split_range(groups.subspan(best_split), cuts);
}

double conditional_entropy(const std::vector<ClassCounts>& bins, double n) {
  double h = 0;
  for (const auto& b : bins) {
    if (total(b) > 0) h += static_cast<double>(total(b)) / n * entropy(b);
  }
  return h;
}

}  // namespace

double entropy(std::span<const std::size_t> counts) {
  const std::size_t n = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
  if (n == 0) throw Error(ErrorCode::EmptyCounts, "entropy of an empty distribution");
  double h = 0;
  for (auto c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(n);
    h -= p * std::log2(p);
  }
  return h;
}

std::vector<double> discretize_mdl(std::span<const double> values, std::span<const Label> labels) {
  if (values.size() != labels.size()) {
    throw Error(ErrorCode::InvalidArgument, "values and labels differ in length");
  }
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });

  std::vector<ValueGroup> groups;
  for (auto i : order) {
    if (groups.empty() || groups.back().value != values[i]) groups.push_back({values[i], {}});
    ++groups.back().counts[index_of(labels[i])];
  }
  std::vector<double> cuts;
  split_range(groups, cuts);
  return cuts;
}

std::size_t bin_of(double value, std::span<const double> cuts) noexcept {
  return static_cast<std::size_t>(std::upper_bound(cuts.begin(), cuts.end(), value,
                                                   [](double v, double c) { return v <= c; }) -
                                  cuts.begin());
}

double info_gain(const Dataset& ds, std::size_t feature) {
  if (feature >= ds.feature_count()) throw Error(ErrorCode::InvalidArgument, "feature index out of range");
  if (ds.empty()) return 0.0;
  const double h_class = entropy(ds.class_counts());
  const auto column = ds.column(feature);

  std::vector<ClassCounts> bins;
  if (ds.schema()[feature].kind == FeatureKind::Boolean) {
    bins.resize(2);
    for (std::size_t i = 0; i < ds.size(); ++i) ++bins[column[i] != 0.0 ? 1 : 0][index_of(ds.label(i))];
  } else {
    const auto cuts = discretize_mdl(column, ds.labels());
    bins.resize(cuts.size() + 1);
    for (std::size_t i = 0; i < ds.size(); ++i) ++bins[bin_of(column[i], cuts)][index_of(ds.label(i))];
  }
  const double gain = h_class - conditional_entropy(bins, static_cast<double>(ds.size()));
  return std::clamp(gain, 0.0, h_class);
}

InfoGainReport rank_features(const Dataset& ds) {
  InfoGainReport report;
  report.classEntropy = ds.empty() ? 0.0 : entropy(ds.class_counts());
  for (std::size_t f = 0; f < ds.feature_count(); ++f) {
    report.ranking.push_back({ds.schema()[f].name, f, info_gain(ds, f)});
  }
  std::stable_sort(report.ranking.begin(), report.ranking.end(),
                   [](const FeatureGain& a, const FeatureGain& b) { return a.gain > b.gain; });
  return report;
}

std::string format_ranking_csv(const InfoGainReport& report) {
  std::string out = "feature,infogain\n";
  char buf[32];
  for (const auto& r : report.ranking) {
    std::snprintf(buf, sizeof buf, "%.4f", r.gain);
    out += r.feature + "," + buf + "\n";
  }
  return out;
}

}  // namespace cdprov
