#include "roboto/syntax/ast.hpp"

#include <algorithm>

namespace roboto::syntax {

std::string toString(const SourceLocation& loc)
{
  std::string out = loc.file.empty() ? std::string("<input>") : loc.file;
  out += ':';
  out += std::to_string(loc.line);
  out += ':';
  out += std::to_string(loc.column);
  return out;
}

bool Query::isNothing() const
{
  return parts.size() == 1 && std::holds_alternative<NothingLiteral>(parts.front());
}

const CallExpr* Query::call() const
{
  for (const auto& part : parts) {
    if (const auto* c = std::get_if<CallExpr>(&part)) return c;
  }
  return nullptr;
}

const IdentRef* Query::soleReference() const
{
  if (parts.size() != 1) return nullptr;
  return std::get_if<IdentRef>(&parts.front());
}

std::string_view toString(StatementKind kind)
{
  switch (kind) {
    case StatementKind::Action: return "Action";
    case StatementKind::Call: return "Call";
    case StatementKind::Conditional: return "Conditional";
    case StatementKind::ForEach: return "ForEach";
    case StatementKind::Until: return "Until";
    case StatementKind::Assignment: return "Assignment";
    case StatementKind::Return: return "Return";
  }
  return "?";
}

StatementKind Statement::kind() const
{
  return static_cast<StatementKind>(node.index());
}

const Block* Statement::block() const
{
  return const_cast<Statement*>(this)->block();
}

Block* Statement::block()
{
  if (auto* c = std::get_if<ConditionalStmt>(&node)) return &c->block;
  if (auto* f = std::get_if<ForEachStmt>(&node)) return &f->block;
  if (auto* u = std::get_if<UntilStmt>(&node)) return &u->block;
  return nullptr;
}

const Strategy* StrategyDoc::find(std::string_view name) const
{
  auto it = std::find_if(strategies.begin(), strategies.end(),
                         [&](const Strategy& s) { return s.name == name; });
  return it == strategies.end() ? nullptr : &*it;
}

const Block* enclosingBlock(const Strategy& strategy, const StatementPath& path)
{
  if (path.empty()) return nullptr;
  const Block* block = &strategy.body;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (path[i] >= block->size()) return nullptr;
    block = (*block)[path[i]].block();
    if (block == nullptr) return nullptr;
  }
  return block;
}

const Statement* statementAt(const Strategy& strategy, const StatementPath& path)
{
  const Block* block = enclosingBlock(strategy, path);
  if (block == nullptr || path.back() >= block->size()) return nullptr;
  return &(*block)[path.back()];
}

namespace {

bool samePart(const QueryPart& a, const QueryPart& b)
{
  if (a.index() != b.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b);
        if constexpr (std::is_same_v<T, Word>) return x.text == y.text;
        else if constexpr (std::is_same_v<T, IdentRef>) return x.name == y.name;
        else if constexpr (std::is_same_v<T, CallExpr>) return x.target == y.target && x.args == y.args;
        else return true;
      },
      a);
}

bool sameText(const std::vector<TextPart>& a, const std::vector<TextPart>& b)
{
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].index() != b[i].index()) return false;
    if (const auto* w = std::get_if<Word>(&a[i])) {
      if (w->text != std::get<Word>(b[i]).text) return false;
    } else if (std::get<IdentRef>(a[i]).name != std::get<IdentRef>(b[i]).name) {
      return false;
    }
  }
  return true;
}

bool sameQuery(const Query& a, const Query& b)
{
  if (a.parts.size() != b.parts.size()) return false;
  for (std::size_t i = 0; i < a.parts.size(); ++i) {
    if (!samePart(a.parts[i], b.parts[i])) return false;
  }
  return true;
}

bool sameBlock(const Block& a, const Block& b)
{
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!sameStructure(a[i], b[i])) return false;
  }
  return true;
}

}  // namespace

bool sameStructure(const Statement& a, const Statement& b)
{
  if (a.kind() != b.kind() || a.comment != b.comment) return false;
  switch (a.kind()) {
    case StatementKind::Action:
      return sameText(std::get<ActionStmt>(a.node).words, std::get<ActionStmt>(b.node).words);
    case StatementKind::Call: {
      const auto& x = std::get<CallStmt>(a.node).call;
      const auto& y = std::get<CallStmt>(b.node).call;
      return x.target == y.target && x.args == y.args;
    }
    case StatementKind::Conditional: {
      const auto& x = std::get<ConditionalStmt>(a.node);
      const auto& y = std::get<ConditionalStmt>(b.node);
      return sameQuery(x.query, y.query) && sameBlock(x.block, y.block);
    }
    case StatementKind::ForEach: {
      const auto& x = std::get<ForEachStmt>(a.node);
      const auto& y = std::get<ForEachStmt>(b.node);
      return x.elementVar == y.elementVar && x.listVar == y.listVar && sameBlock(x.block, y.block);
    }
    case StatementKind::Until: {
      const auto& x = std::get<UntilStmt>(a.node);
      const auto& y = std::get<UntilStmt>(b.node);
      return sameQuery(x.query, y.query) && sameBlock(x.block, y.block);
    }
    case StatementKind::Assignment: {
      const auto& x = std::get<AssignmentStmt>(a.node);
      const auto& y = std::get<AssignmentStmt>(b.node);
      return x.target == y.target && sameQuery(x.query, y.query);
    }
    case StatementKind::Return:
      return sameQuery(std::get<ReturnStmt>(a.node).query, std::get<ReturnStmt>(b.node).query);
  }
  return false;
}

bool sameStructure(const Strategy& a, const Strategy& b)
{
  return a.name == b.name && a.params == b.params && a.leadingComment == b.leadingComment &&
         sameBlock(a.body, b.body);
}

bool sameStructure(const StrategyDoc& a, const StrategyDoc& b)
{
  if (a.strategies.size() != b.strategies.size()) return false;
  for (std::size_t i = 0; i < a.strategies.size(); ++i) {
    if (!sameStructure(a.strategies[i], b.strategies[i])) return false;
  }
  return true;
}

}  // namespace roboto::syntax
