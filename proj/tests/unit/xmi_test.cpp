#include <gtest/gtest.h>

#include <thread>

#include "cdprov/error.hpp"
#include "cdprov/xmi.hpp"
#include "test_support.hpp"

using namespace cdprov;

namespace {

constexpr std::string_view kHeader =
    R"(<?xml version="1.0" encoding="UTF-8"?>)"
    R"(<uml:Model xmlns:xmi="http://www.omg.org/spec/XMI/20131001" xmlns:uml="http://www.omg.org/spec/UML/20131001" name="m">)";

std::string doc(std::string_view body) { return std::string(kHeader) + std::string(body) + "</uml:Model>"; }

ErrorCode code_of(std::string_view text) {
  try {
    parse_xmi(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(ParseXmi, MinimalSingleClass) {
  const auto d = parse_xmi(doc(R"(<packagedElement xmi:type="uml:Class" xmi:id="a" name="A"/>)"));
  ASSERT_EQ(d.classes.size(), 1u);
  EXPECT_EQ(d.classes[0].name, "A");
  EXPECT_EQ(d.classes[0].id, "a");
  EXPECT_TRUE(d.relationships.empty());
  EXPECT_EQ(d.name, "m");
}

TEST(ParseXmi, ReadsMembersAndRelationships) {
  const auto d = parse_xmi(doc(R"(
    <packagedElement xmi:type="uml:Class" xmi:id="a" name="A">
      <ownedAttribute name="x" type="int" visibility="private"/>
      <ownedOperation name="f">
        <ownedParameter name="p" type="int"/>
        <ownedParameter name="q"/>
        <ownedParameter direction="return" type="bool"/>
      </ownedOperation>
    </packagedElement>
    <packagedElement xmi:type="uml:Class" xmi:id="b" name="B"/>
    <relationship kind="generalization" source="b" target="a" label="is"/>)"));
  ASSERT_EQ(d.classes.size(), 2u);
  const auto& a = d.classes[0];
  ASSERT_EQ(a.attributes.size(), 1u);
  EXPECT_EQ(a.attributes[0].typeName, "int");
  EXPECT_EQ(a.attributes[0].visibility, Visibility::Private);
  ASSERT_EQ(a.operations.size(), 1u);
  ASSERT_EQ(a.operations[0].parameters.size(), 2u);
  EXPECT_FALSE(a.operations[0].parameters[1].typeName.has_value());
  EXPECT_EQ(a.operations[0].returnType, "bool");
  ASSERT_EQ(d.relationships.size(), 1u);
  EXPECT_EQ(d.relationships[0].kind, RelationshipKind::Generalization);
  EXPECT_EQ(d.relationships[0].sourceId, "b");
  EXPECT_EQ(d.relationships[0].label, "is");
}

TEST(ParseXmi, ErrorCases) {
  EXPECT_EQ(code_of("<uml:Model><packagedElement"), ErrorCode::MalformedXml);
  EXPECT_EQ(code_of(""), ErrorCode::MalformedXml);
  EXPECT_EQ(code_of(R"(<xmi:XMI xmlns:xmi="x"/>)"), ErrorCode::UnsupportedRoot);
  EXPECT_EQ(code_of(doc(R"(<packagedElement xmi:type="uml:Class" xmi:id="a" name="A"/>
                              <relationship kind="association" source="a" target="z"/>)")),
            ErrorCode::DanglingEndpoint);
  EXPECT_EQ(code_of(doc(R"(<packagedElement xmi:type="uml:Class" xmi:id="a" name="A"/>
                              <packagedElement xmi:type="uml:Class" xmi:id="a" name="B"/>)")),
            ErrorCode::DuplicateClassId);
  EXPECT_EQ(code_of(doc(R"(<packagedElement xmi:type="uml:Class" name="A"/>)")), ErrorCode::InvalidElement);
  EXPECT_EQ(code_of(doc(R"(<packagedElement xmi:type="uml:Class" xmi:id="a" name="A"><ownedAttribute type="int"/></packagedElement>)")),
            ErrorCode::InvalidElement);
  EXPECT_EQ(code_of(doc(R"(<packagedElement xmi:type="uml:Class" xmi:id="a" name="A"/><relationship kind="association" source="a"/>)")),
            ErrorCode::InvalidElement);
}

TEST(ParseXmi, DanglingEndpointNamesTheId) {
  try {
    parse_xmi(doc(R"(<packagedElement xmi:type="uml:Class" xmi:id="a" name="A"/>
                     <relationship kind="association" source="Z" target="a"/>)"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("Z"), std::string::npos);
  }
}

TEST(ParseXmi, UnknownContentWarnsAndIsSkipped) {
  std::vector<std::string> warnings;
  const auto d = parse_xmi(doc(R"(
    <packagedElement xmi:type="uml:Class" xmi:id="a" name="A" color="red">
      <stereotype name="entity"/>
    </packagedElement>
    <packagedElement xmi:type="uml:Interface" xmi:id="i" name="I"/>
    <relationship kind="usage" source="a" target="a"/>)"),
                           &warnings);
  ASSERT_EQ(d.classes.size(), 1u);
  ASSERT_EQ(d.relationships.size(), 1u);
  EXPECT_EQ(d.relationships[0].kind, RelationshipKind::Association);
  EXPECT_GE(warnings.size(), 4u);
}

TEST(ParseXmi, ParsedDiagramsPassValidation) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto d = parse_xmi(serialize_xmi(fixtures::random_diagram(s)));
    EXPECT_TRUE(validate(d).empty()) << s;
  }
}

TEST(SerializeXmi, SingleEmptyClass) {
  ClassDiagram d{"solo", {{"a", "A", {}, {}}}, {}};
  const auto text = serialize_xmi(d);
  std::size_t count = 0;
  for (auto pos = text.find("<packagedElement"); pos != std::string::npos; pos = text.find("<packagedElement", pos + 1))
    ++count;
  EXPECT_EQ(count, 1u);
  EXPECT_EQ(parse_xmi(text), d);
}

TEST(SerializeXmi, GeneralizationElement) {
  ClassDiagram d{"g", {{"a", "A", {}, {}}, {"b", "B", {}, {}}},
                 {{RelationshipKind::Generalization, "b", "a", std::nullopt}}};
  const auto text = serialize_xmi(d);
  EXPECT_NE(text.find(R"(kind="generalization" source="b" target="a")"), std::string::npos);
}

TEST(SerializeXmi, ThreeClassRoundTrip) {
  const auto d = fixtures::three_class_diagram();
  EXPECT_EQ(parse_xmi(serialize_xmi(d)), d);
}

TEST(SerializeXmi, RoundTripPropertyOverRandomDiagrams) {
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const auto d = fixtures::random_diagram(mix_seed(11, s));
    const auto text = serialize_xmi(d);
    const auto back = parse_xmi(text);
    ASSERT_EQ(back, d) << "seed " << s;
    ASSERT_EQ(serialize_xmi(back), text) << "seed " << s;
  }
}

TEST(SerializeXmi, ParsingIsPureAcrossThreads) {
  const auto text = serialize_xmi(fixtures::random_diagram(5, 12));
  const auto reference = parse_xmi(text);
  std::vector<ClassDiagram> results(8);
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < results.size(); ++t) pool.emplace_back([&, t] { results[t] = parse_xmi(text); });
  }
  for (const auto& r : results) EXPECT_EQ(r, reference);
}

TEST(Validate, ValidDiagramHasNoIssues) { EXPECT_TRUE(validate(fixtures::three_class_diagram()).empty()); }

TEST(Validate, DuplicateIdNamed) {
  ClassDiagram d{"d", {{"A", "X", {}, {}}, {"A", "Y", {}, {}}}, {}};
  const auto issues = validate(d);
  ASSERT_EQ(issues.size(), 1u);
  EXPECT_EQ(issues[0].kind, IssueKind::DuplicateClassId);
  EXPECT_EQ(issues[0].identifier, "A");
}

TEST(Validate, DanglingSourceNamed) {
  auto d = fixtures::three_class_diagram();
  d.relationships.push_back({RelationshipKind::Dependency, "Z", "A", std::nullopt});
  const auto issues = validate(d);
  ASSERT_EQ(issues.size(), 1u);
  EXPECT_EQ(issues[0].kind, IssueKind::DanglingEndpoint);
  EXPECT_EQ(issues[0].identifier, "Z");
}
