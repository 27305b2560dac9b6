#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "roboto/syntax/ast.hpp"
#include "roboto/syntax/diagnostic.hpp"

namespace roboto::syntax {

struct ParseResult {
  std::optional<StrategyDoc> doc;
  /// Errors (when `doc` is empty) and non-fatal warnings.
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return doc.has_value(); }
};

/// Parses `.roboto` source text.
///
/// Blocks are delimited by indentation. Statement lines may be indented
/// with tabs or with spaces but not both; the first indented statement line
/// fixes the indentation unit. A line indented deeper than the simple
/// statement directly above it continues that statement. `#` lines attach
/// to the next statement, or to the next STRATEGY header as its
/// introductory comment; their own indentation is not significant.
/// Keywords are case-insensitive.
///
/// Error codes: SyntaxError, IndentationError, DuplicateStrategy.
ParseResult parse(std::string_view text, std::string file = {});

}  // namespace roboto::syntax
