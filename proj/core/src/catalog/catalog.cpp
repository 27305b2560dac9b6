#include "roboto/catalog/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "roboto/catalog/builtin_corpus.hpp"
#include "roboto/digest.hpp"
#include "roboto/syntax/format.hpp"
#include "roboto/syntax/parser.hpp"
#include "roboto/syntax/validate.hpp"
#include "syntax/lexer.hpp"

namespace roboto::catalog {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kIndexVersion = 1;

std::string firstParagraph(const std::optional<std::string>& comment)
{
  if (!comment) return {};
  std::string out;
  std::istringstream lines(*comment);
  std::string line;
  while (std::getline(lines, line)) {
    std::string_view text = syntax::detail::trim(line);
    if (text.empty()) {
      if (out.empty()) continue;
      break;
    }
    if (!out.empty()) out += ' ';
    out += text;
  }
  return out;
}

std::string readFile(const fs::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void writeFileAtomically(const fs::path& path, std::string_view content)
{
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot replace " + path.string() + ": " + ec.message());
}

json entryToJson(const CatalogEntry& e)
{
  return json{{"id", e.id},           {"name", e.name},
              {"path", e.path},       {"summary", e.summary},
              {"strategyNames", e.strategyNames}, {"contentHash", e.contentHash}};
}

}  // namespace

DiagnosticsError::DiagnosticsError(ErrorCode code, std::string message, std::vector<syntax::Diagnostic> diagnostics)
    : Error(code, std::move(message)), diagnostics_(std::move(diagnostics))
{
}

std::string entryIdFor(std::string_view text)
{
  return sha256Hex(text).substr(0, kIdLength);
}

Catalog::Catalog(std::optional<fs::path> dir, bool withBuiltins) : dir_(std::move(dir))
{
  if (withBuiltins) {
    for (const auto& file : builtinCorpus()) {
      Record record = analyse(file.text, std::string("builtin/") + file.fileName, true);
      records_.emplace(record.entry.id, std::move(record));
    }
  }
  if (dir_) {
    std::error_code ec;
    fs::create_directories(*dir_ / "strategies", ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create catalog directory " + dir_->string() + ": " + ec.message());
    load();
  }
}

Catalog::Record Catalog::analyse(std::string text, std::string path, bool builtin)
{
  auto parsed = syntax::parse(text, path);
  if (!parsed.ok()) {
    throw DiagnosticsError(ErrorCode::ParseFailed, "strategy text does not parse", std::move(parsed.diagnostics));
  }
  auto diags = syntax::validate(*parsed.doc);
  if (syntax::hasErrors(diags)) {
    throw DiagnosticsError(ErrorCode::ValidationFailed, "strategy text has validation errors", std::move(diags));
  }

  Record record;
  const auto& doc = *parsed.doc;
  record.entry.id = entryIdFor(text);
  record.entry.name = doc.strategies.front().name;
  record.entry.path = std::move(path);
  record.entry.summary = firstParagraph(doc.strategies.front().leadingComment);
  for (const auto& s : doc.strategies) record.entry.strategyNames.push_back(s.name);
  record.entry.contentHash = sha256Hex(syntax::format(doc));
  record.entry.builtin = builtin;
  record.doc = std::make_shared<const syntax::StrategyDoc>(std::move(*parsed.doc));
  record.text = std::move(text);
  return record;
}

void Catalog::load()
{
  fs::path indexPath = *dir_ / "index.json";
  if (!fs::exists(indexPath)) return;
  json index;
  try {
    index = json::parse(readFile(indexPath));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::IoError, "catalog index is unreadable: " + std::string(e.what()));
  }
  if (index.value("version", 0) != kIndexVersion) {
    throw Error(ErrorCode::FormatVersionMismatch, "unsupported catalog index version");
  }
  for (const auto& item : index.at("entries")) {
    std::string id = item.at("id").get<std::string>();
    std::string path = item.at("path").get<std::string>();
    Record record = analyse(readFile(*dir_ / path), path, false);
    if (record.entry.id != id) {
      throw Error(ErrorCode::IoError, "catalog file " + path + " does not match its recorded id " + id);
    }
    records_.insert_or_assign(id, std::move(record));
  }
}

void Catalog::writeIndex() const
{
  json entries = json::array();
  for (const auto& [id, record] : records_) {
    if (!record.entry.builtin) entries.push_back(entryToJson(record.entry));
  }
  json index{{"version", kIndexVersion}, {"entries", std::move(entries)}};
  writeFileAtomically(*dir_ / "index.json", index.dump(2) + "\n");
}

CatalogEntry Catalog::ingest(std::string text)
{
  std::string id = entryIdFor(text);
  {
    std::shared_lock lock(mutex_);
    if (auto it = records_.find(id); it != records_.end()) return it->second.entry;
  }
  Record record = analyse(std::move(text), "strategies/" + id + ".roboto", false);

  std::unique_lock lock(mutex_);
  if (auto it = records_.find(id); it != records_.end()) return it->second.entry;
  if (dir_) writeFileAtomically(*dir_ / record.entry.path, record.text);
  CatalogEntry entry = record.entry;
  records_.emplace(id, std::move(record));
  if (dir_) writeIndex();
  return entry;
}

std::vector<CatalogEntry> Catalog::list() const
{
  std::shared_lock lock(mutex_);
  std::vector<CatalogEntry> out;
  for (const auto& [id, record] : records_) out.push_back(record.entry);
  std::sort(out.begin(), out.end(), [](const CatalogEntry& a, const CatalogEntry& b) {
    return std::tie(a.name, a.id) < std::tie(b.name, b.id);
  });
  return out;
}

const Catalog::Record& Catalog::find(std::string_view id) const
{
  auto it = records_.find(id);
  if (it == records_.end()) throw Error(ErrorCode::NotFound, "no catalog entry with id '" + std::string(id) + "'");
  return it->second;
}

StoredStrategy Catalog::get(std::string_view id) const
{
  std::shared_lock lock(mutex_);
  const Record& record = find(id);
  return {record.entry, record.text};
}

std::shared_ptr<const syntax::StrategyDoc> Catalog::document(std::string_view id) const
{
  std::shared_lock lock(mutex_);
  return find(id).doc;
}

void Catalog::remove(std::string_view id)
{
  std::unique_lock lock(mutex_);
  const Record& record = find(id);
  if (record.entry.builtin) {
    throw Error(ErrorCode::ReadOnly, "built-in strategy '" + record.entry.name + "' cannot be removed");
  }
  fs::path file = dir_ ? *dir_ / record.entry.path : fs::path{};
  records_.erase(records_.find(id));
  if (dir_) {
    writeIndex();
    std::error_code ec;
    fs::remove(file, ec);
  }
}

}  // namespace roboto::catalog
