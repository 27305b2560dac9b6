#include "syntax/lexer.hpp"

#include <algorithm>
#include <cctype>

namespace roboto::syntax::detail {

bool isIdentStart(char c)
{
  return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_';
}

bool isIdentChar(char c)
{
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

bool isIdentifier(std::string_view s)
{
  return !s.empty() && isIdentStart(s.front()) && std::all_of(s.begin(), s.end(), isIdentChar);
}

bool isSpace(char c)
{
  return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v';
}

std::string_view rtrim(std::string_view s)
{
  while (!s.empty() && isSpace(s.back())) s.remove_suffix(1);
  return s;
}

std::string_view trim(std::string_view s)
{
  while (!s.empty() && isSpace(s.front())) s.remove_prefix(1);
  return rtrim(s);
}

bool equalsIgnoreCase(std::string_view a, std::string_view b)
{
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

std::pair<std::string_view, std::string_view> splitFirst(std::string_view s)
{
  s = trim(s);
  std::size_t i = 0;
  while (i < s.size() && !isSpace(s[i])) ++i;
  return {s.substr(0, i), trim(s.substr(i))};
}

std::size_t quotedIdentifierAt(std::string_view text, std::size_t pos, std::string* name)
{
  if (pos >= text.size() || text[pos] != '\'') return 0;
  if (pos > 0 && isIdentChar(text[pos - 1])) return 0;
  std::size_t i = pos + 1;
  if (i >= text.size() || !isIdentStart(text[i])) return 0;
  while (i < text.size() && isIdentChar(text[i])) ++i;
  if (i >= text.size() || text[i] != '\'') return 0;
  if (i + 1 < text.size() && isIdentChar(text[i + 1])) return 0;
  if (name != nullptr) name->assign(text.substr(pos + 1, i - pos - 1));
  return i + 1;
}

bool readIdentifierToken(std::string_view token, std::string& name)
{
  if (token.size() >= 2 && token.front() == '\'' && token.back() == '\'') {
    token = token.substr(1, token.size() - 2);
  }
  if (!isIdentifier(token)) return false;
  name.assign(token);
  return true;
}

namespace {

std::size_t skipSpaces(std::string_view text, std::size_t i)
{
  while (i < text.size() && isSpace(text[i])) ++i;
  return i;
}

// Parses the argument list starting just after '('. Returns the offset one
// past ')' or 0 on malformed input.
std::size_t parseArgs(std::string_view text, std::size_t i, std::vector<std::string>& args)
{
  for (;;) {
    i = skipSpaces(text, i);
    if (i >= text.size()) return 0;
    if (text[i] == ')') return i + 1;
    std::string name;
    std::size_t end = quotedIdentifierAt(text, i, &name);
    if (end == 0) return 0;
    args.push_back(std::move(name));
    i = end;
  }
}

}  // namespace

std::variant<std::vector<QueryPart>, LexError> lexParts(std::string_view text, TextMode mode,
                                                         const std::set<std::string, std::less<>>& strategies)
{
  std::vector<QueryPart> parts;
  int calls = 0;
  std::size_t i = 0;
  while (true) {
    i = skipSpaces(text, i);
    if (i >= text.size()) break;

    std::string name;
    if (std::size_t end = quotedIdentifierAt(text, i, &name)) {
      parts.emplace_back(IdentRef{std::move(name)});
      i = end;
      continue;
    }

    if (mode == TextMode::Query && isIdentStart(text[i]) && (i == 0 || isSpace(text[i - 1]))) {
      std::size_t j = i;
      while (j < text.size() && isIdentChar(text[j])) ++j;
      std::size_t k = skipSpaces(text, j);
      if (k < text.size() && text[k] == '(' && strategies.contains(text.substr(i, j - i))) {
        CallExpr call{std::string(text.substr(i, j - i)), {}};
        std::size_t end = parseArgs(text, k + 1, call.args);
        if (end == 0) {
          return LexError{i, "malformed call to '" + call.target + "': arguments must be quoted identifiers"};
        }
        if (++calls > 1) return LexError{i, "a query may contain at most one sub-strategy call"};
        parts.emplace_back(std::move(call));
        i = end;
        continue;
      }
    }

    std::size_t j = i + 1;
    while (j < text.size() && !isSpace(text[j]) && quotedIdentifierAt(text, j) == 0) ++j;
    parts.emplace_back(Word{std::string(text.substr(i, j - i))});
    i = j;
  }

  if (mode == TextMode::Query && parts.size() == 1) {
    if (const auto* w = std::get_if<Word>(&parts.front()); w && equalsIgnoreCase(w->text, "nothing")) {
      parts.front() = NothingLiteral{};
    }
  }
  return parts;
}

bool parseStatementCall(std::string_view text, CallExpr& out)
{
  text = trim(text);
  if (!text.empty() && text.back() == '.') text = rtrim(text.substr(0, text.size() - 1));
  std::size_t j = 0;
  if (text.empty() || !isIdentStart(text[0])) return false;
  while (j < text.size() && isIdentChar(text[j])) ++j;
  std::size_t k = skipSpaces(text, j);
  if (k >= text.size() || text[k] != '(') return false;
  CallExpr call{std::string(text.substr(0, j)), {}};
  std::size_t end = parseArgs(text, k + 1, call.args);
  if (end == 0 || skipSpaces(text, end) != text.size()) return false;
  out = std::move(call);
  return true;
}

}  // namespace roboto::syntax::detail
