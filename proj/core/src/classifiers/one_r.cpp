#include <algorithm>
#include <numeric>

#include "cdprov/classifiers.hpp"

namespace cdprov::detail {
namespace {

struct Bucket {
  double first = 0;
  double last = 0;
  ClassCounts counts{};
};

std::size_t errors_of(const ClassCounts& c) { return std::min(c[0], c[1]); }

void absorb(Bucket& into, const Bucket& from) {
  into.last = from.last;
  into.counts[0] += from.counts[0];
  into.counts[1] += from.counts[1];
}

OneRModel rule_for_numeric(const Dataset& ds, std::size_t feature, int minBucket) {
  std::vector<std::size_t> order(ds.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return ds.at(a, feature) < ds.at(b, feature); });

  std::vector<Bucket> groups;
  for (auto i : order) {
    const double v = ds.at(i, feature);
    if (groups.empty() || groups.back().last != v) groups.push_back({v, v, {}});
    ++groups.back().counts[index_of(ds.label(i))];
  }

  // Close a bucket once its majority reaches minBucket and the next value
  // no longer continues that majority.
  const auto min_count = static_cast<std::size_t>(minBucket);
  std::vector<Bucket> buckets;
  std::optional<Bucket> open;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (open) {
      absorb(*open, groups[g]);
    } else {
      open = groups[g];
    }
    const Label maj = majority(open->counts);
    if (open->counts[index_of(maj)] < min_count) continue;
    if (g + 1 == groups.size() || majority(groups[g + 1].counts) != maj) {
      buckets.push_back(*open);
      open.reset();
    }
  }
  if (open) {
    if (buckets.empty()) {
      buckets.push_back(*open);
    } else {
      absorb(buckets.back(), *open);
    }
  }

  std::vector<Bucket> merged;
  for (const auto& b : buckets) {
    if (!merged.empty() && majority(merged.back().counts) == majority(b.counts)) {
      absorb(merged.back(), b);
    } else {
      merged.push_back(b);
    }
  }

  OneRModel rule;
  rule.feature = feature;
  for (std::size_t b = 0; b < merged.size(); ++b) {
    if (b > 0) rule.thresholds.push_back((merged[b - 1].last + merged[b].first) / 2.0);
    rule.buckets.push_back(merged[b].counts);
    rule.trainingErrors += errors_of(merged[b].counts);
  }
  return rule;
}

OneRModel rule_for_boolean(const Dataset& ds, std::size_t feature) {
  std::array<ClassCounts, 2> levels{};
  for (std::size_t i = 0; i < ds.size(); ++i) ++levels[ds.at(i, feature) != 0.0 ? 1 : 0][index_of(ds.label(i))];
  const ClassCounts global = ds.class_counts();

  OneRModel rule;
  rule.feature = feature;
  rule.thresholds = {0.5};
  for (const auto& level : levels) {
    const bool seen = level[0] + level[1] > 0;
    rule.buckets.push_back(seen ? level : global);
    rule.trainingErrors += errors_of(level);
  }
  return rule;
}

}  // namespace

OneRModel train_one_r(const Dataset& ds, int minBucket) {
  std::optional<OneRModel> best;
  for (std::size_t f = 0; f < ds.feature_count(); ++f) {
    auto rule = ds.schema()[f].kind == FeatureKind::Boolean ? rule_for_boolean(ds, f)
                                                           : rule_for_numeric(ds, f, minBucket);
    if (!best || rule.trainingErrors < best->trainingErrors) best = std::move(rule);
  }
  return *best;
}

double one_r_recd(const OneRModel& m, std::span<const double> row) {
  const double v = row[m.feature];
  const auto bucket = static_cast<std::size_t>(
      std::count_if(m.thresholds.begin(), m.thresholds.end(), [&](double t) { return v > t; }));
  return recd_fraction(m.buckets[bucket]);
}

}  // namespace cdprov::detail
