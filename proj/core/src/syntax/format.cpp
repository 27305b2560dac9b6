#include "roboto/syntax/format.hpp"

#include <string_view>

namespace roboto::syntax {

namespace {

void appendComment(std::string& out, const std::string& comment, int depth)
{
  std::string_view rest = comment;
  for (;;) {
    auto nl = rest.find('\n');
    out.append(static_cast<std::size_t>(depth), '\t');
    out += '#';
    out += rest.substr(0, nl);
    out += '\n';
    if (nl == std::string_view::npos) break;
    rest.remove_prefix(nl + 1);
  }
}

void appendBlock(std::string& out, const Block& block, int depth)
{
  for (const auto& stmt : block) {
    if (stmt.comment) appendComment(out, *stmt.comment, depth);
    out.append(static_cast<std::size_t>(depth), '\t');
    out += formatStatementLine(stmt);
    out += '\n';
    if (const Block* inner = stmt.block()) appendBlock(out, *inner, depth + 1);
  }
}

std::string quoted(const std::string& name)
{
  return "'" + name + "'";
}

}  // namespace

std::string formatText(const std::vector<TextPart>& words)
{
  std::string out;
  for (const auto& part : words) {
    if (!out.empty()) out += ' ';
    if (const auto* w = std::get_if<Word>(&part)) out += w->text;
    else out += quoted(std::get<IdentRef>(part).name);
  }
  return out;
}

std::string formatCall(const CallExpr& call)
{
  std::string out = call.target + "(";
  for (std::size_t i = 0; i < call.args.size(); ++i) {
    if (i != 0) out += ' ';
    out += quoted(call.args[i]);
  }
  out += ')';
  return out;
}

std::string formatQuery(const Query& query)
{
  std::string out;
  for (const auto& part : query.parts) {
    if (!out.empty()) out += ' ';
    std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, Word>) out += p.text;
          else if constexpr (std::is_same_v<T, IdentRef>) out += quoted(p.name);
          else if constexpr (std::is_same_v<T, CallExpr>) out += formatCall(p);
          else out += "nothing";
        },
        part);
  }
  return out;
}

std::string formatStatementLine(const Statement& stmt)
{
  return std::visit(
      [](const auto& node) -> std::string {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, ActionStmt>) {
          std::string text = formatText(node.words);
          // The parser strips one trailing period; keep a literal one.
          if (!text.empty() && text.back() == '.') text += '.';
          return text;
        } else if constexpr (std::is_same_v<T, CallStmt>) {
          return "DO " + formatCall(node.call);
        } else if constexpr (std::is_same_v<T, ConditionalStmt>) {
          return "IF " + formatQuery(node.query);
        } else if constexpr (std::is_same_v<T, ForEachStmt>) {
          return "FOR EACH " + quoted(node.elementVar) + " IN " + quoted(node.listVar);
        } else if constexpr (std::is_same_v<T, UntilStmt>) {
          return "UNTIL " + formatQuery(node.query);
        } else if constexpr (std::is_same_v<T, AssignmentStmt>) {
          return "SET " + quoted(node.target) + " TO " + formatQuery(node.query);
        } else {
          return "RETURN " + formatQuery(node.query);
        }
      },
      stmt.node);
}

std::string formatHeader(const Strategy& strategy)
{
  std::string out = "STRATEGY " + strategy.name + " (";
  for (std::size_t i = 0; i < strategy.params.size(); ++i) {
    if (i != 0) out += ' ';
    out += strategy.params[i];
  }
  out += ')';
  return out;
}

std::string format(const StrategyDoc& doc)
{
  std::string out;
  for (std::size_t i = 0; i < doc.strategies.size(); ++i) {
    const Strategy& s = doc.strategies[i];
    if (i != 0) out += '\n';
    if (s.leadingComment) appendComment(out, *s.leadingComment, 0);
    out += formatHeader(s);
    out += '\n';
    appendBlock(out, s.body, 1);
  }
  return out;
}

}  // namespace roboto::syntax
