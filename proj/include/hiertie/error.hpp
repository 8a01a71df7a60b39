#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hiertie {

enum class ErrorCode {
  EmptySpan,
  TooManySlots,
  RootInactive,
  EmptyGraph,
  QueryIsolated,
  InvalidThreshold,
  InvalidArgument,
  DuplicateQuery,
  MissingTruth,
  IncomparableCurves,
  MalformedRow,
  EmptyInput,
  UnknownActor,
  DegenerateConfig,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/**
 * Library error. Every failure mode named in the public API maps to one
 * ErrorCode so callers (and the CLI) can branch without parsing messages.
 */
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hiertie
