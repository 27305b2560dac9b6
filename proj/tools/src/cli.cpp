#include "roboto/cli/cli.hpp"

#include <algorithm>
#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "roboto/catalog/catalog.hpp"
#include "roboto/cli/repl.hpp"
#include "roboto/engine/json.hpp"
#include "roboto/engine/scripted.hpp"
#include "roboto/error.hpp"
#include "roboto/service/http_server.hpp"
#include "roboto/syntax/format.hpp"
#include "roboto/syntax/parser.hpp"
#include "roboto/syntax/validate.hpp"

namespace roboto::cli {

namespace {

using engine::Json;

std::string readFile(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

/// Parses and validates `path`, printing every diagnostic. Returns the
/// document when there are no errors.
std::shared_ptr<const syntax::StrategyDoc> load(const std::string& path, std::ostream& err)
{
  auto parsed = syntax::parse(readFile(path), path);
  for (const auto& d : parsed.diagnostics) err << syntax::formatDiagnostic(d) << '\n';
  if (!parsed.ok()) return nullptr;
  auto diags = syntax::validate(*parsed.doc);
  for (const auto& d : diags) err << syntax::formatDiagnostic(d) << '\n';
  if (syntax::hasErrors(diags)) return nullptr;
  return std::make_shared<const syntax::StrategyDoc>(std::move(*parsed.doc));
}

std::string rootName(const syntax::StrategyDoc& doc, const std::string& requested)
{
  if (requested.empty()) return doc.strategies.front().name;
  if (!doc.find(requested)) throw Error(ErrorCode::UnknownStrategy, "no strategy named '" + requested + "'");
  return requested;
}

void reportError(const Error& e, std::ostream& err)
{
  err << "error " << toString(e.code()) << ": " << e.what();
  if (e.location()) err << " at " << syntax::toString(*e.location());
  err << '\n';
}

int check(const std::vector<std::string>& paths, std::ostream& err)
{
  int code = 0;
  for (const auto& path : paths) {
    if (!load(path, err)) code = 1;
  }
  return code;
}

int fmt(const std::vector<std::string>& paths, bool write, std::ostream& out, std::ostream& err)
{
  int code = 0;
  for (const auto& path : paths) {
    auto parsed = syntax::parse(readFile(path), path);
    if (!parsed.ok()) {
      for (const auto& d : parsed.diagnostics) err << syntax::formatDiagnostic(d) << '\n';
      code = 1;
      continue;
    }
    std::string text = syntax::format(*parsed.doc);
    if (!write) {
      out << text;
      continue;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    file << text;
    if (!file.flush()) throw Error(ErrorCode::IoError, "cannot write " + path);
  }
  return code;
}

engine::Bindings parseArgPairs(const std::vector<std::string>& pairs)
{
  engine::Bindings args;
  for (const auto& pair : pairs) {
    auto eq = pair.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw CLI::ValidationError("--arg", "expected name=value, got '" + pair + "'");
    }
    args[pair.substr(0, eq)] = engine::parseAnswer(std::string_view(pair).substr(eq + 1));
  }
  return args;
}

int replay(const std::string& path, const std::string& strategy, const std::string& argsFile,
           const std::string& scriptFile, std::ostream& out, std::ostream& err)
{
  auto doc = load(path, err);
  if (!doc) return 1;
  engine::Bindings args;
  std::vector<engine::HumanInput> script;
  try {
    if (!argsFile.empty()) args = engine::bindingsFromWire(Json::parse(readFile(argsFile)));
    Json scriptJson = Json::parse(readFile(scriptFile));
    if (!scriptJson.is_array()) throw Error(ErrorCode::BadRequest, "script file must hold a JSON array of inputs");
    for (const auto& item : scriptJson) {
      auto input = engine::inputFromWire(item);
      if (!input) throw Error(ErrorCode::BadRequest, "script entries must not be empty");
      script.push_back(std::move(*input));
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::BadRequest, std::string("malformed JSON: ") + e.what());
  }

  engine::Trace trace = engine::runScripted(doc, rootName(*doc, strategy), args, script);
  for (const auto& entry : trace.steps) out << engine::traceEntryToJson(entry).dump() << '\n';
  out << Json{{"status", "Completed"},
              {"result", engine::valueToJson(trace.result)},
              {"unusedInputs", trace.unusedInputs}}
             .dump()
      << '\n';
  return 0;
}

service::HttpServer* activeServer = nullptr;

extern "C" void stopServer(int)
{
  if (activeServer) activeServer->stop();
}

int serve(int port, const std::string& catalogDir, const std::string& storeDir, std::ostream& out)
{
  catalog::Catalog catalog(catalogDir.empty() ? std::nullopt : std::optional<std::filesystem::path>(catalogDir));
  service::SessionStore store(storeDir.empty() ? std::nullopt : std::optional<std::filesystem::path>(storeDir));
  service::Service svc(catalog, store);
  service::HttpServer server(svc);
  int bound = server.bind("0.0.0.0", port);
  if (bound < 0) throw Error(ErrorCode::IoError, "cannot listen on port " + std::to_string(port));
  out << "listening on http://0.0.0.0:" << bound << "/v1" << std::endl;
  activeServer = &server;
  std::signal(SIGINT, stopServer);
  std::signal(SIGTERM, stopServer);
  server.listen();
  activeServer = nullptr;
  return 0;
}

}  // namespace

int runCli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Check, format, run and serve Roboto strategies", "roboto"};
  app.require_subcommand(1);

  std::vector<std::string> paths;
  auto* checkCmd = app.add_subcommand("check", "Parse and validate strategy files");
  checkCmd->add_option("paths", paths, "Strategy files")->required()->check(CLI::ExistingFile);

  bool write = false;
  auto* fmtCmd = app.add_subcommand("fmt", "Print strategy files in canonical form");
  fmtCmd->add_flag("--write,-w", write, "Rewrite the files in place");
  fmtCmd->add_option("paths", paths, "Strategy files")->required()->check(CLI::ExistingFile);

  std::string path;
  std::string strategy;
  std::vector<std::string> argPairs;
  auto* runCmd = app.add_subcommand("run", "Execute a strategy interactively");
  runCmd->add_option("path", path, "Strategy file")->required()->check(CLI::ExistingFile);
  runCmd->add_option("--strategy,-s", strategy, "Strategy to start (default: the first)");
  runCmd->add_option("--arg,-a", argPairs, "Argument as name=value");

  std::string argsFile;
  std::string scriptFile;
  auto* replayCmd = app.add_subcommand("replay", "Run a strategy against a recorded input script");
  replayCmd->add_option("path", path, "Strategy file")->required()->check(CLI::ExistingFile);
  replayCmd->add_option("--strategy,-s", strategy, "Strategy to start (default: the first)");
  replayCmd->add_option("--args-file", argsFile, "JSON object of arguments")->check(CLI::ExistingFile);
  replayCmd->add_option("--script-file", scriptFile, "JSON array of inputs")->required()->check(CLI::ExistingFile);

  int port = 8080;
  std::string catalogDir;
  std::string storeDir;
  auto* serveCmd = app.add_subcommand("serve", "Serve the HTTP API");
  serveCmd->add_option("--port,-p", port, "Listen port")->envname("ROBOTO_PORT");
  serveCmd->add_option("--catalog", catalogDir, "Catalog directory")->envname("ROBOTO_CATALOG");
  serveCmd->add_option("--store", storeDir, "Session store directory")->envname("ROBOTO_STORE");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 2;
  }

  try {
    if (checkCmd->parsed()) return check(paths, err);
    if (fmtCmd->parsed()) return fmt(paths, write, out, err);
    if (runCmd->parsed()) {
      engine::Bindings bindings = parseArgPairs(argPairs);
      auto doc = load(path, err);
      if (!doc) return 1;
      return runInteractive(doc, rootName(*doc, strategy), std::move(bindings), in, out);
    }
    if (replayCmd->parsed()) return replay(path, strategy, argsFile, scriptFile, out, err);
    if (serveCmd->parsed()) return serve(port, catalogDir, storeDir, out);
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    reportError(e, err);
    return 1;
  }
  return 2;
}

}  // namespace roboto::cli
