#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wikicorpus {

enum class ErrorKind {
  InvalidEncoding,
  MissingFile,
  MalformedLine,
  IndexOutOfRange,
  Network,
  Api,
  PageMissing,
  CacheMiss,
  Io,
  DuplicatePageId,
  ManifestMissing,
  Integrity,
  MalformedVectorLine,
  InconsistentDimension,
  DimensionMismatch,
  EmptyCorpus,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every library failure is reported as an Error carrying its kind, so
/// callers (and the CLI's exit-code mapping) can branch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Transport failures and 5xx answers may succeed on a later attempt.
  bool retryable() const noexcept { return kind_ == ErrorKind::Network; }

 private:
  ErrorKind kind_;
};

}  // namespace wikicorpus
