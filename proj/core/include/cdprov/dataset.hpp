#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cdprov/features.hpp"

namespace cdprov {

/// Ordinal values index per-class arrays; RECD is the positive class.
enum class Label : std::uint8_t { FwCD = 0, RECD = 1 };

inline constexpr std::size_t kLabelCount = 2;
inline constexpr std::array kAllLabels{Label::FwCD, Label::RECD};

constexpr std::size_t index_of(Label l) noexcept { return static_cast<std::size_t>(l); }
constexpr Label other(Label l) noexcept { return l == Label::RECD ? Label::FwCD : Label::RECD; }

std::string_view to_string(Label l) noexcept;
std::optional<Label> parse_label(std::string_view text) noexcept;

using ClassCounts = std::array<std::size_t, kLabelCount>;

struct FeatureSpec {
  std::string name;
  FeatureKind kind = FeatureKind::Ratio;

  bool operator==(const FeatureSpec&) const = default;
};

/// The sixteen canonical feature columns.
std::vector<FeatureSpec> canonical_schema();

/// Row-major numeric matrix with a typed column schema and no labels.
/// Boolean slots hold exactly 0 or 1.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  explicit FeatureMatrix(std::vector<FeatureSpec> schema) : schema_(std::move(schema)) {}

  void add_row(std::span<const double> values);

  const std::vector<FeatureSpec>& schema() const noexcept { return schema_; }
  std::size_t feature_count() const noexcept { return schema_.size(); }
  std::size_t row_count() const noexcept { return schema_.empty() ? 0 : values_.size() / schema_.size(); }

  std::span<const double> row(std::size_t i) const noexcept {
    return {values_.data() + i * schema_.size(), schema_.size()};
  }
  double at(std::size_t row, std::size_t feature) const noexcept {
    return values_[row * schema_.size() + feature];
  }

  bool operator==(const FeatureMatrix&) const = default;

 private:
  std::vector<FeatureSpec> schema_;
  std::vector<double> values_;
};

/// Labeled feature matrix.
class Dataset {
 public:
  Dataset() : Dataset(canonical_schema()) {}
  explicit Dataset(std::vector<FeatureSpec> schema) : features_(std::move(schema)) {}

  void add_row(std::span<const double> values, Label label);

  const FeatureMatrix& features() const noexcept { return features_; }
  const std::vector<FeatureSpec>& schema() const noexcept { return features_.schema(); }
  const std::vector<Label>& labels() const noexcept { return labels_; }

  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }
  std::size_t feature_count() const noexcept { return features_.feature_count(); }
  std::span<const double> row(std::size_t i) const noexcept { return features_.row(i); }
  double at(std::size_t row, std::size_t feature) const noexcept { return features_.at(row, feature); }
  Label label(std::size_t i) const noexcept { return labels_[i]; }

  ClassCounts class_counts() const noexcept;
  std::vector<double> column(std::size_t feature) const;
  Dataset subset(std::span<const std::size_t> rows) const;

  bool operator==(const Dataset&) const = default;

 private:
  FeatureMatrix features_;
  std::vector<Label> labels_;
};

// ---- CSV -----------------------------------------------------------------

/// Header `avgParaOper,...,numAssocType,label`; ratios with four decimals,
/// counts as integers, booleans true/false, LF line endings.
std::string format_csv(const Dataset& ds);
/// Same layout without the label column.
std::string format_unlabeled_csv(const FeatureMatrix& features);

/// Parses the canonical labeled layout. BadHeader, BadValue, RaggedRow.
Dataset parse_csv(std::string_view text);

Dataset load_csv(const std::filesystem::path& path);
void save_csv(const Dataset& ds, const std::filesystem::path& path);

/// Renders one value the way the CSV writer does.
std::string format_value(double value, FeatureKind kind);

std::string read_text_file(const std::filesystem::path& path);
/// Throws Error(WriteFailed).
void write_text_file(const std::filesystem::path& path, std::string_view contents);

// ---- folds ---------------------------------------------------------------

struct FoldAssignment {
  std::size_t k = 0;
  std::vector<std::size_t> fold;  // per row, in [0, k)

  std::vector<std::size_t> test_rows(std::size_t f) const;
  std::vector<std::size_t> train_rows(std::size_t f) const;

  bool operator==(const FoldAssignment&) const = default;
};

/// Shuffles each class with the seed and deals it round-robin across folds,
/// continuing the dealing position from one class to the next. Per-class and
/// total fold sizes therefore differ by at most one.
/// Throws TooFewPerClass when some class has fewer than k members.
FoldAssignment stratified_folds(std::span<const Label> labels, std::size_t k, std::uint64_t seed);
inline FoldAssignment stratified_folds(const Dataset& ds, std::size_t k, std::uint64_t seed) {
  return stratified_folds(ds.labels(), k, seed);
}

// ---- min-max normalization -----------------------------------------------

struct NormStats {
  std::vector<double> min;
  std::vector<double> max;
  std::vector<bool> scaled;  // false for boolean slots

  bool operator==(const NormStats&) const = default;
};

/// Fitted over the selected rows only; never sees labels.
NormStats fit_norm(const FeatureMatrix& features, std::span<const std::size_t> rows);

/// (x - min) / (max - min) clamped to [0, 1]; constant features map to 0.
std::vector<double> apply_norm(const NormStats& stats, std::span<const double> row);

}  // namespace cdprov
