#include "lookupdb/error.hpp"

#include <algorithm>

namespace lookupdb {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingFile: return "MissingFile";
    case ErrorCode::HeaderMismatch: return "HeaderMismatch";
    case ErrorCode::TypeError: return "TypeError";
    case ErrorCode::DuplicateKey: return "DuplicateKey";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::AlreadyEditing: return "AlreadyEditing";
    case ErrorCode::NotEditing: return "NotEditing";
    case ErrorCode::NotActive: return "NotActive";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::ReadOnlyField: return "ReadOnlyField";
    case ErrorCode::UnknownField: return "UnknownField";
    case ErrorCode::UnknownTable: return "UnknownTable";
    case ErrorCode::UnknownBinding: return "UnknownBinding";
    case ErrorCode::UnknownLookupTarget: return "UnknownLookupTarget";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::NoMasterRow: return "NoMasterRow";
    case ErrorCode::NoRelationship: return "NoRelationship";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::ManifestError: return "ManifestError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

std::string summarize(const std::vector<FieldError>& errors) {
  std::string out = "validation failed:";
  for (const auto& e : errors) {
    out += ' ';
    out += e.field;
    out += '=';
    out += e.code;
  }
  return out;
}

}  // namespace

ValidationFailed::ValidationFailed(std::vector<FieldError> errors)
    : Error(ErrorCode::ValidationFailed, summarize(errors)), errors_(std::move(errors)) {}

bool ValidationFailed::has_code(std::string_view code) const {
  return std::any_of(errors_.begin(), errors_.end(),
                     [&](const FieldError& e) { return e.code == code; });
}

SyntaxError::SyntaxError(std::size_t position, const std::string& message)
    : Error(ErrorCode::SyntaxError,
            message + " at position " + std::to_string(position)),
      position_(position) {}

}  // namespace lookupdb
