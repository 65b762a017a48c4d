#include <string>

#include "cdprov/xmi.hpp"

namespace cdprov {
namespace {

void append_escaped(std::string& out, std::string_view text) {
  for (const char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      // Attribute-value normalization would turn raw whitespace into spaces.
      case '\n': out += "&#10;"; break;
      case '\r': out += "&#13;"; break;
      case '\t': out += "&#9;"; break;
      default: out += c;
    }
  }
}

void attr(std::string& out, std::string_view key, std::string_view value) {
  out += ' ';
  out += key;
  out += "=\"";
  append_escaped(out, value);
  out += '"';
}

void optional_attr(std::string& out, std::string_view key, const std::optional<std::string>& value) {
  if (value) attr(out, key, *value);
}

}  // namespace

std::string serialize_xmi(const ClassDiagram& diagram) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<uml:Model xmlns:xmi=\"http://www.omg.org/spec/XMI/20131001\""
         " xmlns:uml=\"http://www.omg.org/spec/UML/20131001\" xmi:version=\"2.5\"";
  attr(out, "name", diagram.name);
  out += ">\n";

  for (const auto& cls : diagram.classes) {
    out += "  <packagedElement xmi:type=\"uml:Class\"";
    attr(out, "xmi:id", cls.id);
    attr(out, "name", cls.name);
    if (cls.attributes.empty() && cls.operations.empty()) {
      out += "/>\n";
      continue;
    }
    out += ">\n";
    for (const auto& a : cls.attributes) {
      out += "    <ownedAttribute";
      attr(out, "name", a.name);
      optional_attr(out, "type", a.typeName);
      if (a.visibility != Visibility::Unspecified) attr(out, "visibility", to_string(a.visibility));
      out += "/>\n";
    }
    for (const auto& op : cls.operations) {
      out += "    <ownedOperation";
      attr(out, "name", op.name);
      if (op.parameters.empty() && !op.returnType) {
        out += "/>\n";
        continue;
      }
      out += ">\n";
      for (const auto& p : op.parameters) {
        out += "      <ownedParameter";
        attr(out, "name", p.name);
        optional_attr(out, "type", p.typeName);
        out += "/>\n";
      }
      if (op.returnType) {
        out += "      <ownedParameter direction=\"return\"";
        optional_attr(out, "type", op.returnType);
        out += "/>\n";
      }
      out += "    </ownedOperation>\n";
    }
    out += "  </packagedElement>\n";
  }

  for (const auto& rel : diagram.relationships) {
    out += "  <relationship";
    attr(out, "kind", to_string(rel.kind));
    attr(out, "source", rel.sourceId);
    attr(out, "target", rel.targetId);
    optional_attr(out, "label", rel.label);
    out += "/>\n";
  }
  out += "</uml:Model>\n";
  return out;
}

}  // namespace cdprov
