#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>

#include "cdprov/model.hpp"

namespace cdprov {

inline constexpr std::size_t kFeatureCount = 16;

/// How a feature slot is typed and serialized: ratios carry four decimals,
/// counts are integers, booleans are a two-level nominal value (0/1).
enum class FeatureKind { Ratio, Count, Boolean };

/// The sixteen structural metrics of one class diagram.
struct FeatureVector {
  double avgParaOper = 0;
  long numPara = 0;
  bool extOperPara = false;
  double avgOperCls = 0;
  long maxOperCls = 0;
  double avgAssocCls = 0;
  long numCls = 0;
  long numAssoc = 0;
  long numOper = 0;
  long numOrpCls = 0;
  double avgOrpCls = 0;
  double avgAttrCls = 0;
  long numAttr = 0;
  long maxAttrCls = 0;
  bool extOrpCls = false;
  long numAssocType = 0;

  bool operator==(const FeatureVector&) const = default;
};

/// Canonical column order, shared by rows, CSV headers and model files.
std::span<const std::string_view, kFeatureCount> feature_names() noexcept;
std::span<const FeatureKind, kFeatureCount> feature_kinds() noexcept;

/// Throws Error(EmptyDiagram) for a diagram without classes. The result does
/// not depend on the order of classes or relationships.
///
/// A class is orphan when no relationship of any kind touches it; numAssoc
/// counts relationships of every kind, and numAssocType the distinct kinds.
FeatureVector extract_features(const ClassDiagram& diagram);

using FeatureRow = std::array<double, kFeatureCount>;

FeatureRow to_row(const FeatureVector& v) noexcept;
FeatureVector from_row(std::span<const double, kFeatureCount> row) noexcept;

}  // namespace cdprov
