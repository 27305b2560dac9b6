#pragma once

#include <string>

namespace roboto::syntax {

/// 1-based position of a construct in a strategy file.
struct SourceLocation {
  int line = 1;
  int column = 1;
  std::string file;

  friend bool operator==(const SourceLocation&, const SourceLocation&) = default;
};

std::string toString(const SourceLocation& loc);

}  // namespace roboto::syntax
