#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cdprov {

enum class Visibility { Unspecified, Public, Private, Protected, Package };

enum class RelationshipKind {
  Association,
  Aggregation,
  Composition,
  Generalization,
  Dependency,
  Realization,
};

inline constexpr std::array kAllRelationshipKinds{
    RelationshipKind::Association,  RelationshipKind::Aggregation,
    RelationshipKind::Composition,  RelationshipKind::Generalization,
    RelationshipKind::Dependency,   RelationshipKind::Realization,
};

std::string_view to_string(Visibility v) noexcept;
std::optional<Visibility> parse_visibility(std::string_view text) noexcept;
std::string_view to_string(RelationshipKind k) noexcept;
std::optional<RelationshipKind> parse_relationship_kind(std::string_view text) noexcept;

struct Parameter {
  std::string name;
  std::optional<std::string> typeName;

  bool operator==(const Parameter&) const = default;
};

struct Attribute {
  std::string name;
  std::optional<std::string> typeName;
  Visibility visibility = Visibility::Unspecified;

  bool operator==(const Attribute&) const = default;
};

struct Operation {
  std::string name;
  std::vector<Parameter> parameters;
  std::optional<std::string> returnType;

  bool operator==(const Operation&) const = default;
};

struct UmlClass {
  std::string id;
  std::string name;
  std::vector<Attribute> attributes;
  std::vector<Operation> operations;

  bool operator==(const UmlClass&) const = default;
};

struct Relationship {
  RelationshipKind kind = RelationshipKind::Association;
  std::string sourceId;
  std::string targetId;
  std::optional<std::string> label;

  bool operator==(const Relationship&) const = default;
};

/// A parsed class diagram. Element order follows document order.
struct ClassDiagram {
  std::string name;
  std::vector<UmlClass> classes;
  std::vector<Relationship> relationships;

  bool operator==(const ClassDiagram&) const = default;
};

}  // namespace cdprov
