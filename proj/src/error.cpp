#include "rumourlens/error.hpp"

namespace rumourlens {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MissingField: return "MissingField";
    case ErrorKind::OrphanReaction: return "OrphanReaction";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::EmptyText: return "EmptyText";
    case ErrorKind::CycleError: return "CycleError";
    case ErrorKind::EmptyCategory: return "EmptyCategory";
    case ErrorKind::BadPattern: return "BadPattern";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::DuplicateConcept: return "DuplicateConcept";
    case ErrorKind::ProviderUnavailable: return "ProviderUnavailable";
    case ErrorKind::MalformedResponse: return "MalformedResponse";
    case ErrorKind::EmptySample: return "EmptySample";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::TooFewSamples: return "TooFewSamples";
    case ErrorKind::SingleClass: return "SingleClass";
    case ErrorKind::FeatureMismatch: return "FeatureMismatch";
    case ErrorKind::TooManyFeatures: return "TooManyFeatures";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::MissingArtifact: return "MissingArtifact";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace rumourlens
