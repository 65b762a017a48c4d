#include <expat.h>

#include <exception>
#include <memory>
#include <string>
#include <unordered_set>
#include <utility>

#include "cdprov/error.hpp"
#include "cdprov/xmi.hpp"

namespace cdprov {
namespace {

constexpr std::string_view kRootElement = "uml:Model";

enum class Scope { Document, Model, Class, Operation, Leaf, Skipped };

class XmiReader {
 public:
  explicit XmiReader(std::vector<std::string>* warnings) : warnings_(warnings) {}

  ClassDiagram take() { return std::move(diagram_); }

  void start(std::string_view element, const XML_Char** attrs) {
    const Scope parent = scopes_.empty() ? Scope::Document : scopes_.back();
    switch (parent) {
      case Scope::Document:
        if (element != kRootElement) {
          throw Error(ErrorCode::UnsupportedRoot,
                      "expected <" + std::string(kRootElement) + ">, found <" + std::string(element) + ">");
        }
        read_model(attrs);
        scopes_.push_back(Scope::Model);
        return;
      case Scope::Model:
        if (element == "packagedElement") {
          scopes_.push_back(read_packaged_element(attrs));
        } else if (element == "relationship") {
          read_relationship(attrs);
          scopes_.push_back(Scope::Leaf);
        } else {
          skip(element);
        }
        return;
      case Scope::Class:
        if (element == "ownedAttribute") {
          read_attribute(attrs);
          scopes_.push_back(Scope::Leaf);
        } else if (element == "ownedOperation") {
          read_operation(attrs);
          scopes_.push_back(Scope::Operation);
        } else {
          skip(element);
        }
        return;
      case Scope::Operation:
        if (element == "ownedParameter") {
          read_parameter(attrs);
          scopes_.push_back(Scope::Leaf);
        } else {
          skip(element);
        }
        return;
      case Scope::Leaf:
        skip(element);
        return;
      case Scope::Skipped:
        scopes_.push_back(Scope::Skipped);
        return;
    }
  }

  void end() { scopes_.pop_back(); }

  void finish() {
    std::unordered_set<std::string_view> ids;
    for (const auto& cls : diagram_.classes) ids.insert(cls.id);
    for (const auto& rel : diagram_.relationships) {
      for (const auto* endpoint : {&rel.sourceId, &rel.targetId}) {
        if (!ids.contains(*endpoint)) {
          throw Error(ErrorCode::DanglingEndpoint,
                      std::string(to_string(rel.kind)) + " references unknown class id \"" + *endpoint + "\"");
        }
      }
    }
  }

 private:
  struct AttributeList {
    const XML_Char** attrs;

    const char* find(std::string_view key) const {
      for (auto p = attrs; *p != nullptr; p += 2) {
        if (key == p[0]) return p[1];
      }
      return nullptr;
    }
    std::optional<std::string> optional(std::string_view key) const {
      const char* v = find(key);
      return v ? std::optional<std::string>(v) : std::nullopt;
    }
  };

  void warn(std::string message) {
    if (warnings_ != nullptr) warnings_->push_back(std::move(message));
  }

  void skip(std::string_view element) {
    warn("ignoring unsupported element <" + std::string(element) + ">");
    scopes_.push_back(Scope::Skipped);
  }

  void check_known(std::string_view element, const XML_Char** attrs,
                   std::initializer_list<std::string_view> known) {
    for (auto p = attrs; *p != nullptr; p += 2) {
      const std::string_view key = p[0];
      if (key == "xmi:id" || key.starts_with("xmlns")) continue;
      bool ok = false;
      for (auto k : known) ok = ok || key == k;
      if (!ok) warn("ignoring attribute \"" + std::string(key) + "\" on <" + std::string(element) + ">");
    }
  }

  static std::string required(const AttributeList& list, std::string_view key, std::string_view element) {
    const char* v = list.find(key);
    if (v == nullptr || *v == '\0') {
      throw Error(ErrorCode::InvalidElement,
                  "<" + std::string(element) + "> requires a non-empty \"" + std::string(key) + "\" attribute");
    }
    return v;
  }

  void read_model(const XML_Char** attrs) {
    check_known(kRootElement, attrs, {"name", "xmi:version"});
    diagram_.name = AttributeList{attrs}.optional("name").value_or("");
  }

  Scope read_packaged_element(const XML_Char** attrs) {
    const AttributeList list{attrs};
    const char* type = list.find("xmi:type");
    if (type == nullptr || std::string_view(type) != "uml:Class") {
      warn("ignoring packagedElement of type \"" + std::string(type ? type : "") + "\"");
      return Scope::Skipped;
    }
    check_known("packagedElement", attrs, {"xmi:type", "name"});
    UmlClass cls;
    cls.id = required(list, "xmi:id", "packagedElement");
    cls.name = list.optional("name").value_or("");
    if (!class_ids_.insert(cls.id).second) {
      throw Error(ErrorCode::DuplicateClassId, "class id \"" + cls.id + "\" appears more than once");
    }
    diagram_.classes.push_back(std::move(cls));
    return Scope::Class;
  }

  void read_attribute(const XML_Char** attrs) {
    check_known("ownedAttribute", attrs, {"name", "type", "visibility"});
    const AttributeList list{attrs};
    Attribute attribute;
    attribute.name = required(list, "name", "ownedAttribute");
    attribute.typeName = list.optional("type");
    if (const char* vis = list.find("visibility")) {
      if (auto parsed = parse_visibility(vis)) {
        attribute.visibility = *parsed;
      } else {
        warn("unknown visibility \"" + std::string(vis) + "\" treated as unspecified");
      }
    }
    diagram_.classes.back().attributes.push_back(std::move(attribute));
  }

  void read_operation(const XML_Char** attrs) {
    check_known("ownedOperation", attrs, {"name"});
    Operation op;
    op.name = AttributeList{attrs}.optional("name").value_or("");
    diagram_.classes.back().operations.push_back(std::move(op));
  }

  void read_parameter(const XML_Char** attrs) {
    check_known("ownedParameter", attrs, {"name", "type", "direction"});
    const AttributeList list{attrs};
    auto& op = diagram_.classes.back().operations.back();
    const char* direction = list.find("direction");
    if (direction != nullptr && std::string_view(direction) == "return") {
      if (op.returnType) warn("operation \"" + op.name + "\" declares more than one return parameter");
      op.returnType = list.optional("type");
      return;
    }
    Parameter param;
    param.name = required(list, "name", "ownedParameter");
    param.typeName = list.optional("type");
    op.parameters.push_back(std::move(param));
  }

  void read_relationship(const XML_Char** attrs) {
    check_known("relationship", attrs, {"kind", "source", "target", "label"});
    const AttributeList list{attrs};
    Relationship rel;
    const std::string kind = list.optional("kind").value_or("");
    if (auto parsed = parse_relationship_kind(kind)) {
      rel.kind = *parsed;
    } else {
      warn("unknown relationship kind \"" + kind + "\" mapped to association");
      rel.kind = RelationshipKind::Association;
    }
    rel.sourceId = required(list, "source", "relationship");
    rel.targetId = required(list, "target", "relationship");
    rel.label = list.optional("label");
    diagram_.relationships.push_back(std::move(rel));
  }

  std::vector<std::string>* warnings_;
  ClassDiagram diagram_;
  std::vector<Scope> scopes_;
  std::unordered_set<std::string> class_ids_;
};

struct ParserDeleter {
  void operator()(XML_ParserStruct* p) const noexcept { XML_ParserFree(p); }
};

struct ParseContext {
  XML_Parser parser;
  XmiReader reader;
  std::exception_ptr failure;
};

void XMLCALL on_start(void* user, const XML_Char* name, const XML_Char** attrs) {
  auto* ctx = static_cast<ParseContext*>(user);
  if (ctx->failure) return;
  try {
    ctx->reader.start(name, attrs);
  } catch (...) {
    ctx->failure = std::current_exception();
    XML_StopParser(ctx->parser, XML_FALSE);
  }
}

void XMLCALL on_end(void* user, const XML_Char*) {
  auto* ctx = static_cast<ParseContext*>(user);
  if (!ctx->failure) ctx->reader.end();
}

}  // namespace

ClassDiagram parse_xmi(std::string_view document, std::vector<std::string>* warnings) {
  std::unique_ptr<XML_ParserStruct, ParserDeleter> parser(XML_ParserCreate("UTF-8"));
  if (!parser) throw Error(ErrorCode::MalformedXml, "could not allocate XML parser");

  ParseContext ctx{parser.get(), XmiReader(warnings), nullptr};
  XML_SetUserData(parser.get(), &ctx);
  XML_SetElementHandler(parser.get(), on_start, on_end);

  const auto status = XML_Parse(parser.get(), document.data(), static_cast<int>(document.size()), XML_TRUE);
  if (ctx.failure) std::rethrow_exception(ctx.failure);
  if (status != XML_STATUS_OK) {
    throw Error(ErrorCode::MalformedXml,
                std::string(XML_ErrorString(XML_GetErrorCode(parser.get()))) + " at line " +
                    std::to_string(XML_GetCurrentLineNumber(parser.get())));
  }
  ctx.reader.finish();
  return ctx.reader.take();
}

}  // namespace cdprov
