#include "cdprov/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cdprov/error.hpp"
#include "cdprov/parallel.hpp"
#include "cdprov/random.hpp"
#include "cdprov/xmi.hpp"

namespace cdprov {
namespace {

constexpr std::uint64_t kLabelStream = 0x1ABE1;

constexpr std::array<std::string_view, 24> kClassNouns{
    "Customer", "Order",   "Invoice", "Product", "Account",  "Payment", "Address",  "Shipment",
    "Catalog",  "Cart",    "User",    "Session", "Report",   "Ledger",  "Supplier", "Warehouse",
    "Item",     "Review",  "Message", "Channel", "Schedule", "Vehicle", "Route",    "Ticket",
};
constexpr std::array<std::string_view, 10> kVerbs{"get", "set", "create", "update", "remove",
                                                  "find", "load", "save", "compute", "validate"};
constexpr std::array<std::string_view, 8> kTypes{"int", "String", "double", "boolean",
                                                 "Date", "long", "List", "Map"};
constexpr std::array<std::string_view, 5> kLabels{"has", "owns", "uses", "manages", "contains"};

/// Per-item count scattered around a diagram-level centre.
class CountSampler {
 public:
  CountSampler(IntRange range, Rng& rng) : range_(range), centre_(rng.uniform(range.lo, range.hi)) {}

  int draw(Rng& rng) const {
    const double v = std::round(centre_ + rng.uniform(-1.0, 1.0));
    return std::clamp(static_cast<int>(v), range_.lo, range_.hi);
  }

 private:
  IntRange range_;
  double centre_;
};

std::optional<std::string> maybe_type(Rng& rng, double p) {
  if (!rng.bernoulli(p)) return std::nullopt;
  return std::string(kTypes[rng.below(kTypes.size())]);
}

RelationshipKind draw_kind(Rng& rng, const std::array<double, 6>& weights) {
  const double u = rng.uniform();
  double acc = 0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    acc += weights[k];
    if (u < acc) return kAllRelationshipKinds[k];
  }
  for (std::size_t k = weights.size(); k-- > 0;)
    if (weights[k] > 0) return kAllRelationshipKinds[k];
  return RelationshipKind::Association;
}

void check_range(const IntRange& r, const char* what) {
  if (r.lo < 0 || r.hi < r.lo) throw Error(ErrorCode::InvalidArgument, std::string(what) + " range is invalid");
}

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must lie in [0, 1]");
}

std::string file_name(std::size_t index, std::size_t total) {
  const std::size_t width = std::max<std::size_t>(4, std::to_string(total).size());
  std::string digits = std::to_string(index + 1);
  return "d" + std::string(width - digits.size(), '0') + digits + ".xmi";
}

}  // namespace

GeneratorProfile GeneratorProfile::default_fwcd() {
  GeneratorProfile p;
  p.label = Label::FwCD;
  p.classCount = {2, 10};
  p.opsPerClass = {0, 3};
  p.paramsPerOp = {0, 1};
  p.attrsPerClass = {0, 4};
  p.relationshipDensity = 1.0;
  p.orphanProbability = 0.03;
  p.kindWeights = {0.45, 0.15, 0.10, 0.20, 0.05, 0.05};
  p.signatureProbability = 0.10;
  p.typeProbability = 0.4;
  return p;
}

GeneratorProfile GeneratorProfile::default_recd() {
  GeneratorProfile p;
  p.label = Label::RECD;
  p.classCount = {3, 16};
  p.opsPerClass = {2, 8};
  p.paramsPerOp = {1, 4};
  p.attrsPerClass = {1, 6};
  p.relationshipDensity = 1.2;
  p.orphanProbability = 0.15;
  p.kindWeights = {0.35, 0.05, 0.05, 0.30, 0.15, 0.10};
  p.signatureProbability = 1.0;
  p.typeProbability = 1.0;
  return p;
}

void check_profile(const GeneratorProfile& p) {
  check_range(p.classCount, "classCount");
  check_range(p.opsPerClass, "opsPerClass");
  check_range(p.paramsPerOp, "paramsPerOp");
  check_range(p.attrsPerClass, "attrsPerClass");
  if (p.classCount.lo < 1) throw Error(ErrorCode::InvalidArgument, "classCount must allow at least one class");
  if (!(p.relationshipDensity >= 0.0)) throw Error(ErrorCode::InvalidArgument, "relationshipDensity must be >= 0");
  check_probability(p.orphanProbability, "orphanProbability");
  check_probability(p.signatureProbability, "signatureProbability");
  check_probability(p.typeProbability, "typeProbability");
  double sum = 0;
  for (double w : p.kindWeights) {
    if (w < 0) throw Error(ErrorCode::InvalidArgument, "kindWeights must be non-negative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw Error(ErrorCode::InvalidArgument, "kindWeights must sum to 1");
}

ClassDiagram generate_diagram(const GeneratorProfile& profile, std::uint64_t seed) {
  check_profile(profile);
  Rng rng(seed);
  ClassDiagram d;

  const int classes = rng.between(profile.classCount.lo, profile.classCount.hi);
  const CountSampler ops(profile.opsPerClass, rng);
  const CountSampler params(profile.paramsPerOp, rng);
  const CountSampler attrs(profile.attrsPerClass, rng);
  const bool signatures = rng.bernoulli(profile.signatureProbability);
  const bool reverse_style = profile.label == Label::RECD;

  std::vector<std::size_t> nouns(kClassNouns.size());
  std::iota(nouns.begin(), nouns.end(), 0);
  rng.shuffle(std::span(nouns));

  for (int c = 0; c < classes; ++c) {
    UmlClass cls;
    cls.id = "c" + std::to_string(c + 1);
    cls.name = std::string(kClassNouns[nouns[static_cast<std::size_t>(c) % nouns.size()]]);
    if (static_cast<std::size_t>(c) >= nouns.size()) cls.name += std::to_string(c / static_cast<int>(nouns.size()) + 1);

    const int n_attrs = attrs.draw(rng);
    for (int a = 0; a < n_attrs; ++a) {
      Attribute attr;
      attr.name = "attr" + std::to_string(a + 1);
      attr.typeName = maybe_type(rng, profile.typeProbability);
      attr.visibility = reverse_style ? Visibility::Private
                                      : (rng.bernoulli(0.5) ? Visibility::Unspecified : Visibility::Public);
      cls.attributes.push_back(std::move(attr));
    }

    const int n_ops = ops.draw(rng);
    for (int o = 0; o < n_ops; ++o) {
      Operation op;
      op.name = std::string(kVerbs[rng.below(kVerbs.size())]) + cls.name + std::to_string(o + 1);
      const int n_params = signatures ? params.draw(rng) : 0;
      for (int p = 0; p < n_params; ++p) {
        op.parameters.push_back({"p" + std::to_string(p + 1), maybe_type(rng, profile.typeProbability)});
      }
      op.returnType = maybe_type(rng, profile.typeProbability);
      cls.operations.push_back(std::move(op));
    }
    d.classes.push_back(std::move(cls));
  }

  // Orphans stay untouched; everything else joins one spanning tree plus
  // extra edges up to the profile's density.
  std::vector<std::size_t> connected;
  for (std::size_t c = 0; c < d.classes.size(); ++c)
    if (!rng.bernoulli(profile.orphanProbability)) connected.push_back(c);
  rng.shuffle(std::span(connected));

  auto add_edge = [&](std::size_t a, std::size_t b) {
    Relationship rel;
    rel.kind = draw_kind(rng, profile.kindWeights);
    const bool flip = rng.bernoulli(0.5);
    rel.sourceId = d.classes[flip ? b : a].id;
    rel.targetId = d.classes[flip ? a : b].id;
    if (!reverse_style && rng.bernoulli(0.3)) rel.label = std::string(kLabels[rng.below(kLabels.size())]);
    d.relationships.push_back(std::move(rel));
  };

  if (connected.size() == 1) {
    add_edge(connected[0], connected[0]);
  } else {
    for (std::size_t i = 1; i < connected.size(); ++i) add_edge(connected[i], connected[rng.below(i)]);
    const double density = profile.relationshipDensity * rng.uniform(0.5, 1.5);
    const auto target = static_cast<std::size_t>(std::lround(density * classes));
    for (std::size_t e = d.relationships.size(); e < target && connected.size() > 1; ++e) {
      const auto a = connected[rng.below(connected.size())];
      auto b = connected[rng.below(connected.size() - 1)];
      if (b == a) b = connected.back();
      add_edge(a, b);
    }
  }
  return d;
}

std::vector<GeneratedDiagram> generate_diagrams(const CorpusConfig& cfg) {
  if (cfg.total < 2) throw Error(ErrorCode::InvalidArgument, "corpus needs at least 2 diagrams");
  check_probability(cfg.recdFraction, "recdFraction");
  check_probability(cfg.noise, "noise");
  check_profile(cfg.fwProfile);
  check_profile(cfg.recdProfile);
  const auto recd = static_cast<std::size_t>(std::lround(static_cast<double>(cfg.total) * cfg.recdFraction));
  if (recd == 0 || recd == cfg.total) {
    throw Error(ErrorCode::InvalidArgument, "recdFraction leaves one label without diagrams");
  }

  std::vector<Label> labels(cfg.total, Label::FwCD);
  std::fill_n(labels.begin(), recd, Label::RECD);
  Rng order(mix_seed(cfg.seed, kLabelStream));
  order.shuffle(std::span(labels));

  std::vector<GeneratedDiagram> out(cfg.total);
  parallel_for(cfg.total, cfg.threads, [&](std::size_t i) {
    const std::uint64_t seed = mix_seed(cfg.seed, i);
    Rng rng(seed);
    const Label label = labels[i];
    const bool swapped = rng.bernoulli(cfg.noise);
    const Label source = swapped ? other(label) : label;
    const auto& profile = source == Label::RECD ? cfg.recdProfile : cfg.fwProfile;

    auto& g = out[i];
    g.entry = {file_name(i, cfg.total), label};
    g.diagram = generate_diagram(profile, rng.next());
    g.diagram.name = g.entry.file.substr(0, g.entry.file.size() - 4);
  });
  return out;
}

std::vector<CorpusEntry> generate_corpus(const CorpusConfig& cfg) {
  const auto diagrams = generate_diagrams(cfg);
  std::error_code ec;
  std::filesystem::create_directories(cfg.outputDirectory, ec);
  if (ec) throw Error(ErrorCode::WriteFailed, "cannot create " + cfg.outputDirectory.string() + ": " + ec.message());

  std::vector<std::string> documents(diagrams.size());
  parallel_for(diagrams.size(), cfg.threads, [&](std::size_t i) { documents[i] = serialize_xmi(diagrams[i].diagram); });

  std::vector<CorpusEntry> manifest;
  manifest.reserve(diagrams.size());
  for (std::size_t i = 0; i < diagrams.size(); ++i) {
    write_text_file(cfg.outputDirectory / diagrams[i].entry.file, documents[i]);
    manifest.push_back(diagrams[i].entry);
  }
  write_text_file(cfg.outputDirectory / "labels.csv", format_manifest(manifest));
  return manifest;
}

std::string format_manifest(const std::vector<CorpusEntry>& entries) {
  std::string out = "file,label\n";
  for (const auto& e : entries) out += e.file + "," + std::string(to_string(e.label)) + "\n";
  return out;
}

std::vector<CorpusEntry> parse_manifest(std::string_view text) {
  std::vector<CorpusEntry> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line_no == 1) {
      if (line != "file,label") throw Error(ErrorCode::BadHeader, "labels manifest must start with \"file,label\"");
      continue;
    }
    if (line.empty()) continue;
    const auto comma = line.rfind(',');
    if (comma == std::string_view::npos) {
      throw Error(ErrorCode::RaggedRow, "manifest line " + std::to_string(line_no) + " lacks a label");
    }
    const auto label = parse_label(line.substr(comma + 1));
    if (!label) {
      throw Error(ErrorCode::BadValue, "manifest line " + std::to_string(line_no) + ": unknown label \"" +
                                           std::string(line.substr(comma + 1)) + "\"");
    }
    out.push_back({std::string(line.substr(0, comma)), *label});
  }
  if (line_no == 0) throw Error(ErrorCode::BadHeader, "labels manifest is empty");
  return out;
}

}  // namespace cdprov
