#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace roboto::engine {

/// A human-recorded value: a string, a list of strings, or nothing.
///
/// List elements are never empty strings. Nothing is distinct from both the
/// empty string and the empty list.
class Value {
public:
  using Text = std::string;
  using TextList = std::vector<std::string>;

  Value() = default;  // nothing

  static Value nothing() { return Value{}; }
  static Value text(std::string s);
  /// Throws Error(InvalidValue) if any element is empty.
  static Value list(std::vector<std::string> items);

  bool isNothing() const { return std::holds_alternative<std::monostate>(data_); }
  bool isText() const { return std::holds_alternative<Text>(data_); }
  bool isList() const { return std::holds_alternative<TextList>(data_); }

  const Text& asText() const { return std::get<Text>(data_); }
  const TextList& asList() const { return std::get<TextList>(data_); }

  /// The elements a FOR EACH visits: a list's items, a non-empty text as a
  /// single element, nothing as no elements.
  TextList elements() const;

  /// Human-readable rendering: `nothing`, the text, or `a, b, c`.
  std::string display() const;

  friend bool operator==(const Value&, const Value&) = default;

private:
  std::variant<std::monostate, Text, TextList> data_;
};

/// Interprets a typed answer. Surrounding whitespace is dropped; the word
/// `nothing` is Nothing; text containing a comma becomes a list of its
/// trimmed, non-empty comma-separated pieces; anything else is text.
Value parseAnswer(std::string_view raw);

}  // namespace roboto::engine
