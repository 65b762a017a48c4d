#include "cdprov/dataset.hpp"

#include <algorithm>
#include <numeric>

#include "cdprov/error.hpp"
#include "cdprov/random.hpp"

namespace cdprov {

std::string_view to_string(Label l) noexcept { return l == Label::RECD ? "RECD" : "FwCD"; }

std::optional<Label> parse_label(std::string_view text) noexcept {
  if (text == "RECD") return Label::RECD;
  if (text == "FwCD") return Label::FwCD;
  return std::nullopt;
}

std::vector<FeatureSpec> canonical_schema() {
  std::vector<FeatureSpec> schema;
  schema.reserve(kFeatureCount);
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    schema.push_back({std::string(feature_names()[i]), feature_kinds()[i]});
  }
  return schema;
}

void FeatureMatrix::add_row(std::span<const double> values) {
  if (values.size() != schema_.size()) {
    throw Error(ErrorCode::RaggedRow, "row has " + std::to_string(values.size()) + " values, schema has " +
                                          std::to_string(schema_.size()));
  }
  for (std::size_t f = 0; f < values.size(); ++f) {
    if (schema_[f].kind == FeatureKind::Boolean && values[f] != 0.0 && values[f] != 1.0) {
      throw Error(ErrorCode::BadValue, "boolean feature " + schema_[f].name + " holds " + std::to_string(values[f]));
    }
  }
  values_.insert(values_.end(), values.begin(), values.end());
}

void Dataset::add_row(std::span<const double> values, Label label) {
  features_.add_row(values);
  labels_.push_back(label);
}

ClassCounts Dataset::class_counts() const noexcept {
  ClassCounts counts{};
  for (auto l : labels_) ++counts[index_of(l)];
  return counts;
}

std::vector<double> Dataset::column(std::size_t feature) const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = at(i, feature);
  return out;
}

Dataset Dataset::subset(std::span<const std::size_t> rows) const {
  Dataset out(schema());
  for (auto r : rows) out.add_row(row(r), label(r));
  return out;
}

std::vector<std::size_t> FoldAssignment::test_rows(std::size_t f) const {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < fold.size(); ++i)
    if (fold[i] == f) rows.push_back(i);
  return rows;
}

std::vector<std::size_t> FoldAssignment::train_rows(std::size_t f) const {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < fold.size(); ++i)
    if (fold[i] != f) rows.push_back(i);
  return rows;
}

FoldAssignment stratified_folds(std::span<const Label> labels, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "fold count must be at least 2");

  std::array<std::vector<std::size_t>, kLabelCount> members;
  for (std::size_t i = 0; i < labels.size(); ++i) members[index_of(labels[i])].push_back(i);
  for (auto l : kAllLabels) {
    if (members[index_of(l)].size() < k) {
      throw Error(ErrorCode::TooFewPerClass, std::string(to_string(l)) + " has " +
                                                 std::to_string(members[index_of(l)].size()) +
                                                 " rows, fewer than " + std::to_string(k) + " folds");
    }
  }

  Rng rng(seed);
  FoldAssignment out{k, std::vector<std::size_t>(labels.size())};
  std::size_t position = 0;
  for (auto& rows : members) {
    rng.shuffle(std::span(rows));
    for (auto r : rows) out.fold[r] = position++ % k;
  }
  return out;
}

NormStats fit_norm(const FeatureMatrix& features, std::span<const std::size_t> rows) {
  const std::size_t n = features.feature_count();
  NormStats stats{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), std::vector<bool>(n, false)};
  for (std::size_t f = 0; f < n; ++f) {
    stats.scaled[f] = features.schema()[f].kind != FeatureKind::Boolean;
    if (rows.empty()) continue;
    double lo = features.at(rows.front(), f);
    double hi = lo;
    for (auto r : rows) {
      lo = std::min(lo, features.at(r, f));
      hi = std::max(hi, features.at(r, f));
    }
    stats.min[f] = lo;
    stats.max[f] = hi;
  }
  return stats;
}

std::vector<double> apply_norm(const NormStats& stats, std::span<const double> row) {
  std::vector<double> out(row.begin(), row.end());
  for (std::size_t f = 0; f < out.size() && f < stats.scaled.size(); ++f) {
    if (!stats.scaled[f]) continue;
    const double range = stats.max[f] - stats.min[f];
    out[f] = range > 0.0 ? std::clamp((out[f] - stats.min[f]) / range, 0.0, 1.0) : 0.0;
  }
  return out;
}

}  // namespace cdprov
