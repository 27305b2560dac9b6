#pragma once

#include <span>

namespace roboto::catalog {

struct BuiltinFile {
  const char* fileName;
  const char* text;
};

/// The strategy files shipped with the library, embedded at build time.
std::span<const BuiltinFile> builtinCorpus();

}  // namespace roboto::catalog
