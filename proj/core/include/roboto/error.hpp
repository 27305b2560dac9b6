#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "roboto/syntax/location.hpp"

namespace roboto {

/// Machine-readable failure categories shared by the engine, catalog and
/// service. The string form (see `toString`) is what goes over the wire.
enum class ErrorCode {
  UnknownStrategy,
  ArityMismatch,
  ValidationFailed,
  ParseFailed,
  InputKindMismatch,
  MissingInput,
  SessionCompleted,
  AtStart,
  UnknownOrHiddenVariable,
  LoopElementLocked,
  InvalidValue,
  FormatVersionMismatch,
  CorruptPayload,
  ScriptExhausted,
  ScriptKindMismatch,
  NotFound,
  ReadOnly,
  Conflict,
  BadRequest,
  IoError,
  StackOverflow,
};

std::string_view toString(ErrorCode code);
std::optional<ErrorCode> errorCodeFromString(std::string_view name);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, std::string message, std::optional<syntax::SourceLocation> location = {});

  ErrorCode code() const noexcept { return code_; }
  const std::optional<syntax::SourceLocation>& location() const noexcept { return location_; }

private:
  ErrorCode code_;
  std::optional<syntax::SourceLocation> location_;
};

}  // namespace roboto
