#include "roboto/cli/repl.hpp"

#include <iostream>
#include <sstream>
#include <string>

#include "roboto/engine/engine.hpp"
#include "roboto/engine/responsibility.hpp"
#include "roboto/error.hpp"
#include "roboto/syntax/format.hpp"

namespace roboto::cli {

namespace {

std::string trim(const std::string& s)
{
  auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::string unquote(std::string s)
{
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

std::optional<bool> parseDecision(const std::string& raw)
{
  std::string s;
  for (char c : trim(raw)) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "true" || s == "t" || s == "yes" || s == "y") return true;
  if (s == "false" || s == "f" || s == "no" || s == "n") return false;
  return std::nullopt;
}

std::string describe(const engine::Value& value)
{
  if (value.isNothing()) return "nothing";
  if (value.isText()) return "\"" + value.asText() + "\" (Text)";
  return "[" + value.display() + "] (TextList of " + std::to_string(value.asList().size()) + ")";
}

void renderTurn(const engine::ExecutionState& state, std::ostream& out)
{
  engine::Status status = engine::status(state);
  if (status.kind == engine::Status::Kind::Completed) {
    out << "Completed with value " << status.value.display() << '\n';
    return;
  }
  const syntax::Statement* stmt = engine::currentStatement(state);
  const syntax::Strategy* strategy = engine::currentStrategy(state);
  out << "\n[" << strategy->name << " line " << stmt->location.line << ", depth " << state.depth() << "]\n";
  if (stmt->comment) {
    std::istringstream lines(*stmt->comment);
    std::string line;
    while (std::getline(lines, line)) out << "  #" << line << '\n';
  }
  out << "> " << engine::renderPrompt(*stmt, state.machine.stack.back().bindings) << '\n';
  for (const auto& step : engine::responsibilitySteps(state)) {
    out << "    " << engine::toString(step.actor) << ": " << step.description << '\n';
  }
  if (status.pending) {
    out << "  awaiting " << engine::toString(status.pending->kind) << '\n';
  } else {
    out << "  ready to advance\n";
  }
}

}  // namespace

int runInteractive(std::shared_ptr<const syntax::StrategyDoc> doc, const std::string& root, engine::Bindings args,
                   std::istream& in, std::ostream& out)
{
  const syntax::Strategy& strategy = *doc->find(root);
  if (strategy.leadingComment) {
    std::istringstream lines(*strategy.leadingComment);
    std::string line;
    while (std::getline(lines, line)) out << "#" << line << '\n';
  }
  for (const auto& param : strategy.params) {
    if (args.count(param)) continue;
    out << "Enter a value for '" << param << "': " << std::flush;
    std::string line;
    if (!std::getline(in, line)) return 0;
    args[param] = engine::parseAnswer(line);
  }

  engine::ExecutionState state;
  try {
    state = engine::start(doc, root, std::move(args));
  } catch (const Error& e) {
    out << toString(e.code()) << ": " << e.what() << '\n';
    return 1;
  }
  renderTurn(state, out);

  std::string line;
  while (out << "roboto> " << std::flush, std::getline(in, line)) {
    std::string command = trim(line);
    std::string rest;
    if (auto space = command.find_first_of(" \t"); space != std::string::npos) {
      rest = trim(command.substr(space + 1));
      command = command.substr(0, space);
    }
    try {
      if (command.empty()) {
        continue;
      } else if (command == "quit" || command == "exit") {
        break;
      } else if (command == "next" || command == "n") {
        std::optional<engine::HumanInput> input;
        if (auto pending = engine::pendingInput(state)) {
          switch (pending->kind) {
          case engine::InputKind::ConditionDecision: {
            std::string answer = rest;
            if (answer.empty()) {
              out << pending->prompt << "\ntrue or false? " << std::flush;
              if (!std::getline(in, answer)) break;
            }
            auto decision = parseDecision(answer);
            if (!decision) {
              out << "Please answer true or false.\n";
              continue;
            }
            input = engine::Decision{*decision};
            break;
          }
          case engine::InputKind::QueryAnswer: {
            std::string answer = rest;
            if (answer.empty()) {
              out << pending->prompt << "\nanswer? " << std::flush;
              if (!std::getline(in, answer)) break;
            }
            input = engine::Answer{engine::parseAnswer(unquote(trim(answer)))};
            break;
          }
          case engine::InputKind::ActionAcknowledge:
          case engine::InputKind::IterationAcknowledge:
            input = engine::Acknowledge{};
            break;
          }
          if (!input) break;
        }
        state = engine::next(state, std::move(input));
        renderTurn(state, out);
      } else if (command == "back" || command == "b") {
        state = engine::previous(state);
        renderTurn(state, out);
      } else if (command == "vars" || command == "v") {
        auto vars = engine::visibleVariables(state);
        if (vars.empty()) out << "(no visible variables)\n";
        for (const auto& [name, value] : vars) out << name << " = " << describe(value) << '\n';
      } else if (command == "set") {
        auto space = rest.find_first_of(" \t");
        if (space == std::string::npos) {
          out << "usage: set NAME VALUE\n";
          continue;
        }
        std::string name = unquote(rest.substr(0, space));
        std::string value = unquote(trim(rest.substr(space + 1)));
        state = engine::setVariable(state, name, engine::parseAnswer(value));
        out << name << " = " << describe(engine::parseAnswer(value)) << '\n';
      } else if (command == "help" || command == "?") {
        out << "commands: next, back, vars, set NAME VALUE, quit\n";
      } else {
        out << "unknown command '" << command << "' (try help)\n";
      }
    } catch (const Error& e) {
      out << toString(e.code()) << ": " << e.what() << '\n';
    }
  }
  return 0;
}

}  // namespace roboto::cli
