#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lookupdb {

enum class ErrorCode {
  MissingFile,
  HeaderMismatch,
  TypeError,
  DuplicateKey,
  EmptyDataset,
  AlreadyEditing,
  NotEditing,
  NotActive,
  InvalidState,
  ReadOnlyField,
  UnknownField,
  UnknownTable,
  UnknownBinding,
  UnknownLookupTarget,
  NotFound,
  NoMasterRow,
  NoRelationship,
  SyntaxError,
  ValidationFailed,
  ManifestError,
  IoError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Field-level error codes carried by ValidationFailed and the mutation API.
namespace field_code {
inline constexpr std::string_view kRequired = "REQUIRED";
inline constexpr std::string_view kDuplicateKey = "DUPLICATE_KEY";
inline constexpr std::string_view kFkViolation = "FK_VIOLATION";
inline constexpr std::string_view kRestrict = "RESTRICT";
inline constexpr std::string_view kTypeError = "TYPE_ERROR";
inline constexpr std::string_view kReadOnly = "READ_ONLY";
inline constexpr std::string_view kUnknownField = "UNKNOWN_FIELD";
}  // namespace field_code

struct FieldError {
  std::string field;
  std::string code;
  std::string message;

  bool operator==(const FieldError&) const = default;
};

class ValidationFailed : public Error {
 public:
  explicit ValidationFailed(std::vector<FieldError> errors);

  const std::vector<FieldError>& errors() const noexcept { return errors_; }
  bool has_code(std::string_view code) const;

 private:
  std::vector<FieldError> errors_;
};

// Parse failure in an expression or display-format pattern. Position is a
// 0-based byte offset into the source text.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& message);

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace lookupdb
