#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cdprov/model.hpp"

namespace cdprov {

/// Parses the supported XMI subset:
///
///   <uml:Model name="...">
///     <packagedElement xmi:type="uml:Class" xmi:id="..." name="...">
///       <ownedAttribute name="..." type="..." visibility="..."/>
///       <ownedOperation name="...">
///         <ownedParameter name="..." type="..."/>
///         <ownedParameter direction="return" type="..."/>
///       </ownedOperation>
///     </packagedElement>
///     <relationship kind="..." source="id" target="id" label="..."/>
///   </uml:Model>
///
/// Unknown elements and attributes are skipped, and unknown relationship
/// kinds fall back to association; each such event appends a message to
/// `warnings` when it is non-null.
///
/// Throws Error with MalformedXml, UnsupportedRoot, InvalidElement,
/// DanglingEndpoint or DuplicateClassId.
ClassDiagram parse_xmi(std::string_view document, std::vector<std::string>* warnings = nullptr);

/// Emits a document that parse_xmi maps back to an equal diagram.
std::string serialize_xmi(const ClassDiagram& diagram);

enum class IssueKind { DuplicateClassId, DanglingEndpoint, EmptyIdentifier, EmptyName };

struct ValidationIssue {
  IssueKind kind;
  std::string identifier;
  std::string message;
};

/// Empty iff every model invariant holds.
std::vector<ValidationIssue> validate(const ClassDiagram& diagram);

}  // namespace cdprov
