#pragma once

#include <string>

#include "roboto/syntax/ast.hpp"

namespace roboto::syntax {

/// Canonical source text: uppercase keywords, one tab per indent level,
/// quoted identifiers, comments on their own lines above their statement,
/// one blank line between strategies.
std::string format(const StrategyDoc& doc);

/// One statement rendered without indentation or comment, e.g.
/// `FOR EACH 'line' IN 'lines'`.
std::string formatStatementLine(const Statement& stmt);
std::string formatQuery(const Query& query);
std::string formatText(const std::vector<TextPart>& words);
std::string formatCall(const CallExpr& call);
std::string formatHeader(const Strategy& strategy);

}  // namespace roboto::syntax
