#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "roboto/syntax/ast.hpp"

namespace roboto::syntax::detail {

bool isIdentStart(char c);
bool isIdentChar(char c);
bool isIdentifier(std::string_view s);
bool isSpace(char c);

std::string_view trim(std::string_view s);
std::string_view rtrim(std::string_view s);
bool equalsIgnoreCase(std::string_view a, std::string_view b);

/// Splits off the first whitespace-delimited token of `s`.
std::pair<std::string_view, std::string_view> splitFirst(std::string_view s);

/// When `text[pos]` opens a quoted identifier, returns the offset one past
/// the closing quote and stores the name; otherwise returns 0.
std::size_t quotedIdentifierAt(std::string_view text, std::size_t pos, std::string* name = nullptr);

/// Accepts `'name'` or a bare `name`.
bool readIdentifierToken(std::string_view token, std::string& name);

struct LexError {
  std::size_t offset = 0;
  std::string message;
};

enum class TextMode { Action, Query };

/// Splits natural-language text into words and identifier references. In
/// query mode, `name(...)` where `name` is in `strategies` is an embedded
/// call, and a lone `nothing` becomes the nothing sentinel.
std::variant<std::vector<QueryPart>, LexError> lexParts(std::string_view text, TextMode mode,
                                                         const std::set<std::string, std::less<>>& strategies);

/// Parses `name('a' 'b')` occupying all of `text` (an optional trailing
/// period is allowed). Returns false when `text` is not exactly a call.
bool parseStatementCall(std::string_view text, CallExpr& out);

}  // namespace roboto::syntax::detail
