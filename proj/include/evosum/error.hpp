#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace evosum {

enum class ErrorCode {
  kEmptyReference,
  kEmptyArticle,
  kIoFailure,
  kDimensionMismatch,
  kEmptySentence,
  kEmptyCorpus,
  kMalformedFile,
  kInvalidConfig,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyReference: return "EmptyReference";
    case ErrorCode::kEmptyArticle: return "EmptyArticle";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kEmptySentence: return "EmptySentence";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kMalformedFile: return "MalformedFile";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

/// Every failure raised by the library. The message is prefixed with the
/// code name so that CLI diagnostics are greppable.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace evosum
