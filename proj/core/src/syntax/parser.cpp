#include "roboto/syntax/parser.hpp"

#include <set>
#include <utility>

#include "syntax/lexer.hpp"

namespace roboto::syntax {

using namespace detail;

namespace {

constexpr int kTabWidth = 4;

enum class LineKind { Blank, Comment, Header, Code };

struct PhysicalLine {
  int number = 0;
  LineKind kind = LineKind::Blank;
  std::string_view indent;
  std::string_view content;  // after indentation, right-trimmed
};

/// A statement line together with any continuation lines joined onto it.
struct LogicalLine {
  int number = 0;
  std::string_view indent;
  std::string content;
  std::vector<std::string> comment;
};

int visualWidth(std::string_view indent)
{
  int col = 0;
  for (char c : indent) col = c == '\t' ? (col / kTabWidth + 1) * kTabWidth : col + 1;
  return col;
}

bool isHeader(std::string_view content)
{
  auto [first, rest] = splitFirst(content);
  if (equalsIgnoreCase(first, "strategy")) return true;
  // `STRATEGY name(...)` without a space before the parenthesis.
  auto paren = first.find('(');
  return paren != std::string_view::npos && equalsIgnoreCase(first.substr(0, paren), "strategy");
}

bool opensBlockKeyword(std::string_view content)
{
  auto [first, rest] = splitFirst(content);
  if (equalsIgnoreCase(first, "if") || equalsIgnoreCase(first, "until")) return true;
  return equalsIgnoreCase(first, "for") && equalsIgnoreCase(splitFirst(rest).first, "each");
}

std::string joinComment(const std::vector<std::string>& lines)
{
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i != 0) out += '\n';
    out += lines[i];
  }
  return out;
}

class Parser {
public:
  Parser(std::string_view text, std::string file) : file_(std::move(file))
  {
    if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
    source_ = text;
    split(text);
  }

  ParseResult run()
  {
    collectStrategyNames();

    StrategyDoc doc;
    doc.sourceText = std::string(source_);
    std::set<std::string, std::less<>> seen;

    std::vector<std::string> pending;
    std::optional<Strategy> current;
    std::vector<std::pair<int, Block*>> open;  // (depth, block)
    int lastDepth = 0;
    bool lastIsOpener = false;
    bool haveLast = false;

    auto finish = [&]() {
      if (!current) return;
      if (current->body.empty()) {
        error("SyntaxError", "strategy '" + current->name + "' has no statements", current->location);
      }
      checkBlocks(current->body);
      if (!seen.insert(current->name).second) {
        error("DuplicateStrategy", "strategy '" + current->name + "' is defined more than once",
              current->location);
      }
      doc.strategies.push_back(std::move(*current));
      current.reset();
    };

    for (std::size_t i = 0; i < lines_.size(); ++i) {
      const PhysicalLine& line = lines_[i];
      switch (line.kind) {
        case LineKind::Blank:
          continue;
        case LineKind::Comment:
          pending.emplace_back(rtrim(line.content.substr(1)));
          continue;
        case LineKind::Header: {
          finish();
          SourceLocation loc = at(line.number, line.indent.size() + 1);
          if (!line.indent.empty()) {
            error("IndentationError", "STRATEGY headers must not be indented", loc);
          }
          current = parseHeader(line.content, loc);
          if (!pending.empty()) current->leadingComment = joinComment(pending);
          pending.clear();
          open.assign(1, {1, &current->body});
          haveLast = false;
          continue;
        }
        case LineKind::Code:
          break;
      }

      LogicalLine logical{line.number, line.indent, std::string(line.content), std::move(pending)};
      pending.clear();
      SourceLocation loc = at(logical.number, logical.indent.size() + 1);
      if (!current) {
        error("SyntaxError", "statement appears before any STRATEGY header", loc);
        continue;
      }
      int depth = depthOf(logical.indent, loc);
      if (depth < 0) continue;

      if (!opensBlockKeyword(line.content)) {
        while (i + 1 < lines_.size() && lines_[i + 1].kind == LineKind::Code &&
               isContinuation(line.indent, lines_[i + 1].indent)) {
          ++i;
          logical.content += ' ';
          logical.content += lines_[i].content;
        }
      }
      if (depth == 0) {
        error("IndentationError", "statements must be indented under their STRATEGY header", loc);
        continue;
      }
      if (depth > open.back().first) {
        if (depth == open.back().first + 1 && haveLast && lastIsOpener && lastDepth == open.back().first) {
          open.emplace_back(depth, open.back().second->back().block());
        } else {
          error("IndentationError", "unexpected indentation", loc);
          continue;
        }
      }
      while (depth < open.back().first) open.pop_back();

      auto stmt = parseStatement(logical.content, loc);
      if (!stmt) continue;
      if (!logical.comment.empty()) stmt->comment = joinComment(logical.comment);
      lastIsOpener = stmt->opensBlock();
      lastDepth = depth;
      haveLast = true;
      open.back().second->push_back(std::move(*stmt));
    }
    finish();

    if (!pending.empty()) {
      diags_.push_back({Severity::Warning, "DanglingComment", "comment is not followed by a statement",
                        at(static_cast<int>(lines_.size()), 1)});
    }
    if (doc.strategies.empty() && !hasErrors(diags_)) {
      error("SyntaxError", "document defines no strategy", at(1, 1));
    }

    ParseResult result;
    if (!hasErrors(diags_)) result.doc = std::move(doc);
    result.diagnostics = std::move(diags_);
    return result;
  }

private:
  void split(std::string_view text)
  {
    int number = 0;
    while (!text.empty() || number == 0) {
      auto nl = text.find('\n');
      std::string_view raw = text.substr(0, nl);
      text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
      ++number;
      if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);

      PhysicalLine line;
      line.number = number;
      std::size_t ws = 0;
      while (ws < raw.size() && (raw[ws] == ' ' || raw[ws] == '\t')) ++ws;
      line.indent = raw.substr(0, ws);
      line.content = rtrim(raw.substr(ws));
      if (line.content.empty()) line.kind = LineKind::Blank;
      else if (line.content.front() == '#') line.kind = LineKind::Comment;
      else if (isHeader(line.content)) line.kind = LineKind::Header;
      else line.kind = LineKind::Code;
      lines_.push_back(line);
      if (nl == std::string_view::npos) break;
    }
  }

  void collectStrategyNames()
  {
    for (const auto& line : lines_) {
      if (line.kind != LineKind::Header) continue;
      std::string_view rest = trim(line.content.substr(8));
      std::size_t j = 0;
      while (j < rest.size() && isIdentChar(rest[j])) ++j;
      if (j > 0) strategyNames_.emplace(rest.substr(0, j));
    }
  }

  bool consistentIndent(std::string_view indent) const
  {
    if (indent.empty()) return true;
    char c = unitChar_ ? unitChar_ : indent.front();
    for (char x : indent) {
      if (x != c) return false;
    }
    return true;
  }

  bool isContinuation(std::string_view prevIndent, std::string_view indent) const
  {
    if (visualWidth(indent) <= visualWidth(prevIndent)) return false;
    if (!consistentIndent(indent) || !consistentIndent(prevIndent) || unitWidth_ == 0) return true;
    // Consistent indentation: exactly one level deeper continues; deeper
    // still is an indentation error reported when the line is placed.
    return indent.size() == prevIndent.size() + unitWidth_;
  }

  int depthOf(std::string_view indent, const SourceLocation& loc)
  {
    if (indent.empty()) return 0;
    if (!consistentIndent(indent)) {
      error("IndentationError", "mixed tabs and spaces in indentation", loc);
      return -1;
    }
    if (unitWidth_ == 0) {
      unitChar_ = indent.front();
      unitWidth_ = indent.size();
    }
    if (indent.size() % unitWidth_ != 0) {
      error("IndentationError",
            "indentation is not a multiple of the indentation unit (" + std::to_string(unitWidth_) +
                (unitChar_ == '\t' ? " tab)" : " spaces)"),
            loc);
      return -1;
    }
    return static_cast<int>(indent.size() / unitWidth_);
  }

  Strategy parseHeader(std::string_view content, const SourceLocation& loc)
  {
    Strategy s;
    s.location = loc;
    std::string_view rest = trim(content.substr(8));
    std::size_t j = 0;
    while (j < rest.size() && isIdentChar(rest[j])) ++j;
    s.name = std::string(rest.substr(0, j));
    if (!isIdentifier(s.name)) {
      error("SyntaxError", "expected a strategy name after STRATEGY", loc);
      s.name = "<invalid>";
      return s;
    }
    rest = trim(rest.substr(j));
    if (rest.empty() || rest.front() != '(') {
      error("SyntaxError", "expected '(' after strategy name '" + s.name + "'", loc);
      return s;
    }
    auto close = rest.find(')');
    if (close == std::string_view::npos) {
      error("SyntaxError", "missing ')' in STRATEGY header", loc);
      return s;
    }
    if (!trim(rest.substr(close + 1)).empty()) {
      error("SyntaxError", "unexpected text after STRATEGY header", loc);
    }
    std::string_view params = rest.substr(1, close - 1);
    std::set<std::string> seen;
    while (!trim(params).empty()) {
      auto [tok, tail] = splitFirst(params);
      params = tail;
      std::string name;
      if (!readIdentifierToken(tok, name)) {
        error("SyntaxError", "invalid parameter name '" + std::string(tok) + "'", loc);
        continue;
      }
      if (!seen.insert(name).second) {
        error("SyntaxError", "duplicate parameter '" + name + "' in strategy '" + s.name + "'", loc);
        continue;
      }
      s.params.push_back(std::move(name));
    }
    return s;
  }

  std::optional<Query> parseQuery(std::string_view text, const SourceLocation& loc, std::size_t offset)
  {
    auto lexed = lexParts(text, TextMode::Query, strategyNames_);
    if (auto* err = std::get_if<LexError>(&lexed)) {
      SourceLocation where = loc;
      where.column += static_cast<int>(offset + err->offset);
      error("SyntaxError", err->message, where);
      return std::nullopt;
    }
    Query q{std::move(std::get<std::vector<QueryPart>>(lexed))};
    if (q.parts.empty()) {
      error("SyntaxError", "expected a query", loc);
      return std::nullopt;
    }
    return q;
  }

  std::optional<Statement> parseStatement(std::string_view content, const SourceLocation& loc)
  {
    Statement stmt;
    stmt.location = loc;
    auto [keyword, rest] = splitFirst(content);
    auto offsetOf = [&](std::string_view part) {
      return static_cast<std::size_t>(part.data() - content.data());
    };

    if (equalsIgnoreCase(keyword, "if") || equalsIgnoreCase(keyword, "until")) {
      auto q = parseQuery(rest, loc, offsetOf(rest));
      if (!q) return std::nullopt;
      if (equalsIgnoreCase(keyword, "if")) stmt.node = ConditionalStmt{std::move(*q), {}};
      else stmt.node = UntilStmt{std::move(*q), {}};
      return stmt;
    }

    if (equalsIgnoreCase(keyword, "for")) {
      auto [each, afterEach] = splitFirst(rest);
      auto [element, afterElement] = splitFirst(afterEach);
      auto [in, afterIn] = splitFirst(afterElement);
      auto [list, trailing] = splitFirst(afterIn);
      ForEachStmt loop;
      if (!equalsIgnoreCase(each, "each") || !readIdentifierToken(element, loop.elementVar) ||
          !equalsIgnoreCase(in, "in") || !readIdentifierToken(list, loop.listVar) || !trailing.empty()) {
        error("SyntaxError", "expected FOR EACH 'element' IN 'list'", loc);
        return std::nullopt;
      }
      stmt.node = std::move(loop);
      return stmt;
    }

    if (equalsIgnoreCase(keyword, "set")) {
      auto [target, afterTarget] = splitFirst(rest);
      auto [to, query] = splitFirst(afterTarget);
      AssignmentStmt assign;
      if (!readIdentifierToken(target, assign.target) || !equalsIgnoreCase(to, "to") || query.empty()) {
        error("SyntaxError", "expected SET 'variable' TO query", loc);
        return std::nullopt;
      }
      auto q = parseQuery(query, loc, offsetOf(query));
      if (!q) return std::nullopt;
      assign.query = std::move(*q);
      stmt.node = std::move(assign);
      return stmt;
    }

    if (equalsIgnoreCase(keyword, "return")) {
      if (rest.empty()) {
        error("SyntaxError", "RETURN needs a query (use RETURN nothing for no value)", loc);
        return std::nullopt;
      }
      auto q = parseQuery(rest, loc, offsetOf(rest));
      if (!q) return std::nullopt;
      stmt.node = ReturnStmt{std::move(*q)};
      return stmt;
    }

    if (equalsIgnoreCase(keyword, "do")) {
      CallExpr call;
      if (parseStatementCall(rest, call)) {
        stmt.node = CallStmt{std::move(call)};
        return stmt;
      }
    }

    std::string_view text = content;
    if (text.back() == '.') text = rtrim(text.substr(0, text.size() - 1));
    if (text.empty()) {
      error("SyntaxError", "empty action", loc);
      return std::nullopt;
    }
    auto lexed = lexParts(text, TextMode::Action, strategyNames_);
    ActionStmt action;
    for (auto& part : std::get<std::vector<QueryPart>>(lexed)) {
      if (auto* w = std::get_if<Word>(&part)) action.words.emplace_back(std::move(*w));
      else action.words.emplace_back(std::move(std::get<IdentRef>(part)));
    }
    stmt.node = std::move(action);
    return stmt;
  }

  void checkBlocks(const Block& block)
  {
    for (const auto& stmt : block) {
      if (const Block* inner = stmt.block()) {
        if (inner->empty()) {
          error("SyntaxError", std::string(toString(stmt.kind())) + " statement has an empty block",
                stmt.location);
        }
        checkBlocks(*inner);
      }
    }
  }

  SourceLocation at(int line, std::size_t column) const
  {
    return SourceLocation{line, static_cast<int>(column), file_};
  }

  void error(std::string code, std::string message, SourceLocation loc)
  {
    diags_.push_back({Severity::Error, std::move(code), std::move(message), std::move(loc)});
  }

  std::string file_;
  std::string_view source_;
  std::vector<PhysicalLine> lines_;
  std::set<std::string, std::less<>> strategyNames_;
  std::vector<Diagnostic> diags_;
  char unitChar_ = 0;
  std::size_t unitWidth_ = 0;
};

}  // namespace

ParseResult parse(std::string_view text, std::string file)
{
  return Parser(text, std::move(file)).run();
}

}  // namespace roboto::syntax
