#include "cdprov/features.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "cdprov/error.hpp"

namespace cdprov {
namespace {

constexpr std::array<std::string_view, kFeatureCount> kNames{
    "avgParaOper", "numPara",  "extOperPara", "avgOperCls", "maxOperCls",  "avgAssocCls",
    "numCls",      "numAssoc", "numOper",     "numOrpCls",  "avgOrpCls",   "avgAttrCls",
    "numAttr",     "maxAttrCls", "extOrpCls", "numAssocType",
};

constexpr std::array<FeatureKind, kFeatureCount> kKinds{
    FeatureKind::Ratio, FeatureKind::Count,   FeatureKind::Boolean, FeatureKind::Ratio,
    FeatureKind::Count, FeatureKind::Ratio,   FeatureKind::Count,   FeatureKind::Count,
    FeatureKind::Count, FeatureKind::Count,   FeatureKind::Ratio,   FeatureKind::Ratio,
    FeatureKind::Count, FeatureKind::Count,   FeatureKind::Boolean, FeatureKind::Count,
};

}  // namespace

std::span<const std::string_view, kFeatureCount> feature_names() noexcept { return kNames; }
std::span<const FeatureKind, kFeatureCount> feature_kinds() noexcept { return kKinds; }

FeatureVector extract_features(const ClassDiagram& diagram) {
  if (diagram.classes.empty()) {
    throw Error(ErrorCode::EmptyDiagram, "diagram \"" + diagram.name + "\" has no classes");
  }

  FeatureVector v;
  v.numCls = static_cast<long>(diagram.classes.size());
  for (const auto& cls : diagram.classes) {
    const auto ops = static_cast<long>(cls.operations.size());
    const auto attrs = static_cast<long>(cls.attributes.size());
    v.numOper += ops;
    v.numAttr += attrs;
    v.maxOperCls = std::max(v.maxOperCls, ops);
    v.maxAttrCls = std::max(v.maxAttrCls, attrs);
    for (const auto& op : cls.operations) v.numPara += static_cast<long>(op.parameters.size());
  }

  std::unordered_set<std::string_view> connected;
  std::array<bool, kAllRelationshipKinds.size()> kindSeen{};
  for (const auto& rel : diagram.relationships) {
    connected.insert(rel.sourceId);
    connected.insert(rel.targetId);
    kindSeen[static_cast<std::size_t>(rel.kind)] = true;
  }
  v.numAssoc = static_cast<long>(diagram.relationships.size());
  v.numAssocType = std::count(kindSeen.begin(), kindSeen.end(), true);
  v.numOrpCls = std::count_if(diagram.classes.begin(), diagram.classes.end(),
                              [&](const UmlClass& c) { return !connected.contains(c.id); });

  const auto classes = static_cast<double>(v.numCls);
  v.avgParaOper = v.numOper > 0 ? static_cast<double>(v.numPara) / static_cast<double>(v.numOper) : 0.0;
  v.avgOperCls = static_cast<double>(v.numOper) / classes;
  v.avgAssocCls = static_cast<double>(v.numAssoc) / classes;
  v.avgOrpCls = static_cast<double>(v.numOrpCls) / classes;
  v.avgAttrCls = static_cast<double>(v.numAttr) / classes;
  v.extOperPara = v.numPara > 0;
  v.extOrpCls = v.numOrpCls > 0;
  return v;
}

FeatureRow to_row(const FeatureVector& v) noexcept {
  auto d = [](long x) { return static_cast<double>(x); };
  auto b = [](bool x) { return x ? 1.0 : 0.0; };
  return {v.avgParaOper, d(v.numPara),   b(v.extOperPara), v.avgOperCls,  d(v.maxOperCls),
          v.avgAssocCls, d(v.numCls),    d(v.numAssoc),    d(v.numOper),  d(v.numOrpCls),
          v.avgOrpCls,   v.avgAttrCls,   d(v.numAttr),     d(v.maxAttrCls), b(v.extOrpCls),
          d(v.numAssocType)};
}

FeatureVector from_row(std::span<const double, kFeatureCount> row) noexcept {
  auto l = [](double x) { return std::lround(x); };
  auto b = [](double x) { return x != 0.0; };
  FeatureVector v;
  v.avgParaOper = row[0];
  v.numPara = l(row[1]);
  v.extOperPara = b(row[2]);
  v.avgOperCls = row[3];
  v.maxOperCls = l(row[4]);
  v.avgAssocCls = row[5];
  v.numCls = l(row[6]);
  v.numAssoc = l(row[7]);
  v.numOper = l(row[8]);
  v.numOrpCls = l(row[9]);
  v.avgOrpCls = row[10];
  v.avgAttrCls = row[11];
  v.numAttr = l(row[12]);
  v.maxAttrCls = l(row[13]);
  v.extOrpCls = b(row[14]);
  v.numAssocType = l(row[15]);
  return v;
}

}  // namespace cdprov
