#pragma once

#include <vector>

#include "roboto/syntax/ast.hpp"
#include "roboto/syntax/diagnostic.hpp"

namespace roboto::syntax {

/// Static checks over a parsed document.
///
/// Errors: UnknownStrategy (call target not defined in the document),
/// ArityMismatch (argument count differs from parameter count).
/// Warnings: UndefinedReference (no lexically preceding parameter,
/// assignment target or enclosing loop variable), UnreachableStatement
/// (follows a RETURN in the same block).
std::vector<Diagnostic> validate(const StrategyDoc& doc);

}  // namespace roboto::syntax
