#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cdprov/dataset.hpp"
#include "cdprov/model.hpp"

namespace cdprov {

struct IntRange {
  int lo = 0;
  int hi = 0;

  bool operator==(const IntRange&) const = default;
};

/// Statistical profile of one diagram population. Every per-diagram count
/// range is sampled around a diagram-level centre drawn uniformly from the
/// range, so two profiles overlap wherever their ranges do.
struct GeneratorProfile {
  Label label = Label::RECD;
  IntRange classCount;
  IntRange opsPerClass;
  IntRange paramsPerOp;
  IntRange attrsPerClass;
  double relationshipDensity = 1.0;  // expected relationships per class
  double orphanProbability = 0.0;
  std::array<double, 6> kindWeights{};  // indexed by RelationshipKind
  /// Probability that a diagram records operation parameters at all.
  double signatureProbability = 1.0;
  /// Probability that an attribute, parameter or return type is written down.
  double typeProbability = 1.0;

  static GeneratorProfile default_fwcd();
  static GeneratorProfile default_recd();

  bool operator==(const GeneratorProfile&) const = default;
};

/// Throws InvalidArgument when a range is empty or negative, a probability
/// leaves [0, 1], or kindWeights does not sum to 1.
void check_profile(const GeneratorProfile& profile);

struct CorpusConfig {
  std::size_t total = 999;
  double recdFraction = 0.8068;
  std::uint64_t seed = 7;
  double noise = 0.08;  // chance a diagram is drawn from the other label's profile
  GeneratorProfile fwProfile = GeneratorProfile::default_fwcd();
  GeneratorProfile recdProfile = GeneratorProfile::default_recd();
  std::filesystem::path outputDirectory = "corpus";
  unsigned threads = 1;
};

struct CorpusEntry {
  std::string file;  // relative to the output directory
  Label label = Label::RECD;

  bool operator==(const CorpusEntry&) const = default;
};

struct GeneratedDiagram {
  CorpusEntry entry;
  ClassDiagram diagram;
};

/// Deterministic in (profile, seed); the result always passes validate().
ClassDiagram generate_diagram(const GeneratorProfile& profile, std::uint64_t seed);

/// Exactly round(total * recdFraction) RECD diagrams, the rest FwCD, in a
/// seeded order. Nothing touches the filesystem.
std::vector<GeneratedDiagram> generate_diagrams(const CorpusConfig& cfg);

/// Writes d0001.xmi ... plus labels.csv (`file,label`) and returns the
/// manifest. Throws WriteFailed.
std::vector<CorpusEntry> generate_corpus(const CorpusConfig& cfg);

std::string format_manifest(const std::vector<CorpusEntry>& entries);
std::vector<CorpusEntry> parse_manifest(std::string_view text);

}  // namespace cdprov
