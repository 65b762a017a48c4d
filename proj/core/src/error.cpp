#include "cdprov/error.hpp"

namespace cdprov {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedXml: return "MalformedXml";
    case ErrorCode::UnsupportedRoot: return "UnsupportedRoot";
    case ErrorCode::DanglingEndpoint: return "DanglingEndpoint";
    case ErrorCode::DuplicateClassId: return "DuplicateClassId";
    case ErrorCode::InvalidElement: return "InvalidElement";
    case ErrorCode::EmptyDiagram: return "EmptyDiagram";
    case ErrorCode::BadHeader: return "BadHeader";
    case ErrorCode::BadValue: return "BadValue";
    case ErrorCode::RaggedRow: return "RaggedRow";
    case ErrorCode::ReadFailed: return "ReadFailed";
    case ErrorCode::WriteFailed: return "WriteFailed";
    case ErrorCode::TooFewPerClass: return "TooFewPerClass";
    case ErrorCode::EmptyCounts: return "EmptyCounts";
    case ErrorCode::SingleClassDataset: return "SingleClassDataset";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::CorruptModel: return "CorruptModel";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    case ErrorCode::SingleClassLabels: return "SingleClassLabels";
    case ErrorCode::NoInputs: return "NoInputs";
    case ErrorCode::AllInputsFailed: return "AllInputsFailed";
    case ErrorCode::MissingInputs: return "MissingInputs";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace cdprov
