#include <unordered_map>
#include <unordered_set>

#include "cdprov/xmi.hpp"

namespace cdprov {

std::string_view to_string(Visibility v) noexcept {
  switch (v) {
    case Visibility::Unspecified: return "unspecified";
    case Visibility::Public: return "public";
    case Visibility::Private: return "private";
    case Visibility::Protected: return "protected";
    case Visibility::Package: return "package";
  }
  return "unspecified";
}

std::optional<Visibility> parse_visibility(std::string_view text) noexcept {
  for (auto v : {Visibility::Unspecified, Visibility::Public, Visibility::Private, Visibility::Protected,
                 Visibility::Package}) {
    if (text == to_string(v)) return v;
  }
  return std::nullopt;
}

std::string_view to_string(RelationshipKind k) noexcept {
  switch (k) {
    case RelationshipKind::Association: return "association";
    case RelationshipKind::Aggregation: return "aggregation";
    case RelationshipKind::Composition: return "composition";
    case RelationshipKind::Generalization: return "generalization";
    case RelationshipKind::Dependency: return "dependency";
    case RelationshipKind::Realization: return "realization";
  }
  return "association";
}

std::optional<RelationshipKind> parse_relationship_kind(std::string_view text) noexcept {
  for (auto k : kAllRelationshipKinds) {
    if (text == to_string(k)) return k;
  }
  return std::nullopt;
}

std::vector<ValidationIssue> validate(const ClassDiagram& diagram) {
  std::vector<ValidationIssue> issues;
  std::unordered_map<std::string_view, int> seen;
  for (const auto& cls : diagram.classes) {
    if (cls.id.empty()) {
      issues.push_back({IssueKind::EmptyIdentifier, "", "class \"" + cls.name + "\" has an empty id"});
    } else if (++seen[cls.id] == 2) {
      issues.push_back({IssueKind::DuplicateClassId, cls.id, "DuplicateClassId: class id \"" + cls.id + "\" is not unique"});
    }
    for (const auto& a : cls.attributes) {
      if (a.name.empty()) {
        issues.push_back({IssueKind::EmptyName, cls.id, "attribute of class \"" + cls.id + "\" has an empty name"});
      }
    }
    for (const auto& op : cls.operations) {
      for (const auto& p : op.parameters) {
        if (p.name.empty()) {
          issues.push_back({IssueKind::EmptyName, cls.id,
                            "parameter of operation \"" + op.name + "\" in class \"" + cls.id + "\" has an empty name"});
        }
      }
    }
  }

  std::unordered_set<std::string_view> reported;
  for (const auto& rel : diagram.relationships) {
    for (const auto* endpoint : {&rel.sourceId, &rel.targetId}) {
      if (endpoint->empty()) {
        issues.push_back({IssueKind::EmptyIdentifier, "", std::string(to_string(rel.kind)) + " has an empty endpoint"});
      } else if (!seen.contains(*endpoint) && reported.insert(*endpoint).second) {
        issues.push_back({IssueKind::DanglingEndpoint, *endpoint,
                          "DanglingEndpoint: relationship endpoint \"" + *endpoint + "\" names no class"});
      }
    }
  }
  return issues;
}

}  // namespace cdprov
