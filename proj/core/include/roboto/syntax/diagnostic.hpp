#pragma once

#include <span>
#include <string>
#include <string_view>

#include "roboto/syntax/location.hpp"

namespace roboto::syntax {

enum class Severity { Error, Warning };

std::string_view toString(Severity severity);

/// A located finding from parsing or validation. Errors block execution,
/// warnings do not.
struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;
  std::string message;
  SourceLocation location;
};

/// `file:line:col severity code message`
std::string formatDiagnostic(const Diagnostic& diag);

bool hasErrors(std::span<const Diagnostic> diags);

}  // namespace roboto::syntax
