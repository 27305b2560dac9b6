// Stored strategy files and their metadata.
//
// On disk a catalog is a directory holding `strategies/<id>.roboto` (the
// original bytes) and `index.json`. The built-in corpus is always present
// and read-only.

#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "roboto/error.hpp"
#include "roboto/syntax/ast.hpp"
#include "roboto/syntax/diagnostic.hpp"

namespace roboto::catalog {

struct CatalogEntry {
  /// Prefix of the SHA-256 of the original text.
  std::string id;
  /// Name of the first strategy in the file.
  std::string name;
  std::string path;
  /// First paragraph of the introductory comment.
  std::string summary;
  std::vector<std::string> strategyNames;
  /// SHA-256 of the canonical formatted text.
  std::string contentHash;
  bool builtin = false;

  friend bool operator==(const CatalogEntry&, const CatalogEntry&) = default;
};

struct StoredStrategy {
  CatalogEntry entry;
  std::string text;
};

/// An Error that also carries the parser or validator diagnostics.
class DiagnosticsError : public Error {
public:
  DiagnosticsError(ErrorCode code, std::string message, std::vector<syntax::Diagnostic> diagnostics);
  const std::vector<syntax::Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

private:
  std::vector<syntax::Diagnostic> diagnostics_;
};

inline constexpr std::size_t kIdLength = 12;

class Catalog {
public:
  /// Opens the catalog stored under `dir`, creating it if absent. Without a
  /// directory the catalog lives in memory only.
  explicit Catalog(std::optional<std::filesystem::path> dir = std::nullopt, bool withBuiltins = true);

  Catalog(const Catalog&) = delete;
  Catalog& operator=(const Catalog&) = delete;

  /// Adds a strategy file. Ingesting identical text again returns the
  /// existing entry. Errors: ParseFailed, ValidationFailed (both as
  /// DiagnosticsError), IoError.
  CatalogEntry ingest(std::string text);

  /// All entries, ordered by name.
  std::vector<CatalogEntry> list() const;

  /// Errors: NotFound.
  StoredStrategy get(std::string_view id) const;
  std::shared_ptr<const syntax::StrategyDoc> document(std::string_view id) const;

  /// Errors: NotFound, ReadOnly (built-in entries), IoError.
  void remove(std::string_view id);

private:
  struct Record {
    CatalogEntry entry;
    std::string text;
    std::shared_ptr<const syntax::StrategyDoc> doc;
  };

  static Record analyse(std::string text, std::string path, bool builtin);
  void load();
  void writeIndex() const;
  const Record& find(std::string_view id) const;

  std::optional<std::filesystem::path> dir_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, Record, std::less<>> records_;
};

/// Computes the entry id for `text`.
std::string entryIdFor(std::string_view text);

}  // namespace roboto::catalog
