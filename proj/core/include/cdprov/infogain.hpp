#pragma once

#include <span>
#include <string>
#include <vector>

#include "cdprov/dataset.hpp"

namespace cdprov {

/// Shannon entropy in bits, with 0·log 0 = 0. Throws EmptyCounts when the
/// counts sum to zero.
double entropy(std::span<const std::size_t> counts);
inline double entropy(const ClassCounts& counts) { return entropy(std::span<const std::size_t>(counts)); }

/// Supervised discretization by recursive entropy-minimizing binary splits,
/// each accepted only when its gain beats the minimum-description-length
/// penalty (log2(N-1) + log2(3^k - 2) - [k·H(S) - k1·H(S1) - k2·H(S2)]) / N.
/// Returns the accepted cut points in ascending order; a value v falls into
/// bin b = #{cuts c : v > c}.
std::vector<double> discretize_mdl(std::span<const double> values, std::span<const Label> labels);

std::size_t bin_of(double value, std::span<const double> cuts) noexcept;

/// H(class) - H(class | feature); booleans bin on their two levels and
/// numeric features on their discretize_mdl cuts.
double info_gain(const Dataset& ds, std::size_t feature);

struct FeatureGain {
  std::string feature;
  std::size_t index = 0;
  double gain = 0;
};

struct InfoGainReport {
  double classEntropy = 0;
  std::vector<FeatureGain> ranking;  // descending gain, ties in schema order
};

InfoGainReport rank_features(const Dataset& ds);

/// `feature,infogain` with gains to four decimals.
std::string format_ranking_csv(const InfoGainReport& report);

}  // namespace cdprov
