#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cdprov {

enum class ErrorCode {
  // XMI
  MalformedXml,
  UnsupportedRoot,
  DanglingEndpoint,
  DuplicateClassId,
  InvalidElement,
  // feature extraction
  EmptyDiagram,
  // dataset
  BadHeader,
  BadValue,
  RaggedRow,
  ReadFailed,
  WriteFailed,
  TooFewPerClass,
  // infogain
  EmptyCounts,
  // classifiers
  SingleClassDataset,
  SchemaMismatch,
  CorruptModel,
  VersionMismatch,
  // evaluation
  SingleClassLabels,
  // cli
  NoInputs,
  AllInputsFailed,
  MissingInputs,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI's exit-code mapping) can branch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cdprov
