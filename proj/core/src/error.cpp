#include "roboto/error.hpp"

#include <array>
#include <utility>

namespace roboto {

namespace {

constexpr std::array<std::pair<ErrorCode, std::string_view>, 21> kNames{{
    {ErrorCode::UnknownStrategy, "UnknownStrategy"},
    {ErrorCode::ArityMismatch, "ArityMismatch"},
    {ErrorCode::ValidationFailed, "ValidationFailed"},
    {ErrorCode::ParseFailed, "ParseFailed"},
    {ErrorCode::InputKindMismatch, "InputKindMismatch"},
    {ErrorCode::MissingInput, "MissingInput"},
    {ErrorCode::SessionCompleted, "SessionCompleted"},
    {ErrorCode::AtStart, "AtStart"},
    {ErrorCode::UnknownOrHiddenVariable, "UnknownOrHiddenVariable"},
    {ErrorCode::LoopElementLocked, "LoopElementLocked"},
    {ErrorCode::InvalidValue, "InvalidValue"},
    {ErrorCode::FormatVersionMismatch, "FormatVersionMismatch"},
    {ErrorCode::CorruptPayload, "CorruptPayload"},
    {ErrorCode::ScriptExhausted, "ScriptExhausted"},
    {ErrorCode::ScriptKindMismatch, "ScriptKindMismatch"},
    {ErrorCode::NotFound, "NotFound"},
    {ErrorCode::ReadOnly, "ReadOnly"},
    {ErrorCode::Conflict, "Conflict"},
    {ErrorCode::BadRequest, "BadRequest"},
    {ErrorCode::IoError, "IoError"},
    {ErrorCode::StackOverflow, "StackOverflow"},
}};

}  // namespace

std::string_view toString(ErrorCode code)
{
  for (const auto& [c, name] : kNames) {
    if (c == code) return name;
  }
  return "Unknown";
}

std::optional<ErrorCode> errorCodeFromString(std::string_view name)
{
  for (const auto& [c, n] : kNames) {
    if (n == name) return c;
  }
  return std::nullopt;
}

Error::Error(ErrorCode code, std::string message, std::optional<syntax::SourceLocation> location)
    : std::runtime_error(std::move(message)), code_(code), location_(std::move(location))
{
}

}  // namespace roboto
