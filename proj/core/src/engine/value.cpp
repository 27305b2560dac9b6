#include "roboto/engine/value.hpp"

#include <algorithm>

#include "roboto/error.hpp"
#include "syntax/lexer.hpp"

namespace roboto::engine {

using syntax::detail::equalsIgnoreCase;
using syntax::detail::trim;

Value Value::text(std::string s)
{
  Value v;
  v.data_ = std::move(s);
  return v;
}

Value Value::list(std::vector<std::string> items)
{
  if (std::any_of(items.begin(), items.end(), [](const std::string& s) { return s.empty(); })) {
    throw Error(ErrorCode::InvalidValue, "list elements must be non-empty strings");
  }
  Value v;
  v.data_ = std::move(items);
  return v;
}

Value::TextList Value::elements() const
{
  if (isList()) return asList();
  if (isText() && !asText().empty()) return {asText()};
  return {};
}

std::string Value::display() const
{
  if (isNothing()) return "nothing";
  if (isText()) return asText();
  std::string out;
  for (const auto& item : asList()) {
    if (!out.empty()) out += ", ";
    out += item;
  }
  return out;
}

Value parseAnswer(std::string_view raw)
{
  std::string_view s = trim(raw);
  if (equalsIgnoreCase(s, "nothing")) return Value::nothing();
  if (s.find(',') == std::string_view::npos) return Value::text(std::string(s));
  std::vector<std::string> items;
  while (true) {
    auto comma = s.find(',');
    std::string_view piece = trim(s.substr(0, comma));
    if (!piece.empty()) items.emplace_back(piece);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return Value::list(std::move(items));
}

}  // namespace roboto::engine
