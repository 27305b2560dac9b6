#include "roboto/syntax/diagnostic.hpp"

#include <algorithm>

namespace roboto::syntax {

std::string_view toString(Severity severity)
{
  return severity == Severity::Error ? "error" : "warning";
}

std::string formatDiagnostic(const Diagnostic& diag)
{
  std::string out = toString(diag.location);
  out += ' ';
  out += toString(diag.severity);
  out += ' ';
  out += diag.code;
  out += ' ';
  out += diag.message;
  return out;
}

bool hasErrors(std::span<const Diagnostic> diags)
{
  return std::any_of(diags.begin(), diags.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

}  // namespace roboto::syntax
