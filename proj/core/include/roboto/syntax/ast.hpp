// Syntax tree for Roboto strategy documents.
//
// A document holds one or more strategies. Each strategy body is a tree of
// statements; block statements (IF, FOR EACH, UNTIL) own a nested block.
// Natural-language text is kept as a sequence of words and quoted
// identifier references so that the engine can resolve references for
// display without interpreting the prose.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "roboto/syntax/location.hpp"

namespace roboto::syntax {

/// A bare natural-language token.
struct Word {
  std::string text;
};

/// A quoted `'identifier'` occurrence.
struct IdentRef {
  std::string name;
};

/// The query consisting solely of the word `nothing`.
struct NothingLiteral {};

/// `name('a' 'b')` -- a sub-strategy invocation, either after DO or embedded
/// in a query.
struct CallExpr {
  std::string target;
  std::vector<std::string> args;
};

using TextPart = std::variant<Word, IdentRef>;
using QueryPart = std::variant<Word, IdentRef, CallExpr, NothingLiteral>;

struct Query {
  std::vector<QueryPart> parts;

  bool isNothing() const;
  /// The embedded call, if the query has one.
  const CallExpr* call() const;
  /// The referenced identifier when the whole query is one reference.
  const IdentRef* soleReference() const;
};

struct Statement;
using Block = std::vector<Statement>;

struct ActionStmt {
  std::vector<TextPart> words;
};

struct CallStmt {
  CallExpr call;
};

struct ConditionalStmt {
  Query query;
  Block block;
};

struct ForEachStmt {
  std::string elementVar;
  std::string listVar;
  Block block;
};

struct UntilStmt {
  Query query;
  Block block;
};

struct AssignmentStmt {
  std::string target;
  Query query;
};

struct ReturnStmt {
  Query query;
};

enum class StatementKind { Action, Call, Conditional, ForEach, Until, Assignment, Return };

std::string_view toString(StatementKind kind);

struct Statement {
  std::variant<ActionStmt, CallStmt, ConditionalStmt, ForEachStmt, UntilStmt, AssignmentStmt,
               ReturnStmt>
      node;
  /// Comment lines (text after `#`) immediately preceding the statement.
  std::optional<std::string> comment;
  SourceLocation location;

  StatementKind kind() const;
  /// The nested block for IF / FOR EACH / UNTIL, otherwise null.
  const Block* block() const;
  Block* block();
  bool opensBlock() const { return block() != nullptr; }
};

struct Strategy {
  std::string name;
  std::vector<std::string> params;
  Block body;
  /// Introductory comment shown before execution starts.
  std::optional<std::string> leadingComment;
  SourceLocation location;
};

struct StrategyDoc {
  std::vector<Strategy> strategies;
  std::string sourceText;

  const Strategy* find(std::string_view name) const;
};

/// Index path from a strategy body down to one statement: the first entry
/// indexes the body, each further entry indexes the block of the previous.
using StatementPath = std::vector<std::size_t>;

const Statement* statementAt(const Strategy& strategy, const StatementPath& path);
/// The block that contains the statement at `path` (the body for depth 1).
const Block* enclosingBlock(const Strategy& strategy, const StatementPath& path);

/// Compares two documents ignoring source locations and source text.
bool sameStructure(const StrategyDoc& a, const StrategyDoc& b);
bool sameStructure(const Strategy& a, const Strategy& b);
bool sameStructure(const Statement& a, const Statement& b);

/// Visits every statement in document order (pre-order).
template <typename Fn>
void forEachStatement(const Block& block, Fn&& fn, int depth = 1)
{
  for (const auto& stmt : block) {
    fn(stmt, depth);
    if (const Block* inner = stmt.block()) forEachStatement(*inner, fn, depth + 1);
  }
}

}  // namespace roboto::syntax
