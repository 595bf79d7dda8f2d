#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rumourlens {

enum class ErrorKind {
  MissingField,
  OrphanReaction,
  DuplicateId,
  ParseError,
  EmptyText,
  CycleError,
  EmptyCategory,
  BadPattern,
  OutOfRange,
  DuplicateConcept,
  ProviderUnavailable,
  MalformedResponse,
  EmptySample,
  NonFiniteValue,
  TooFewSamples,
  SingleClass,
  FeatureMismatch,
  TooManyFeatures,
  IoError,
  ConfigError,
  MissingArtifact,
};

std::string_view to_string(ErrorKind kind);

// Every library failure surfaces as this exception; `kind()` is the stable
// machine-readable part, `what()` carries context for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace rumourlens
