#include "roboto/syntax/validate.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <tuple>

namespace roboto::syntax {

namespace {

class Validator {
public:
  explicit Validator(const StrategyDoc& doc) : doc_(doc) {}

  std::vector<Diagnostic> run()
  {
    for (const auto& strategy : doc_.strategies) {
      defined_.clear();
      defined_.insert(strategy.params.begin(), strategy.params.end());
      loopVars_.clear();
      checkBlock(strategy.body);
    }
    std::stable_sort(diags_.begin(), diags_.end(), [](const Diagnostic& a, const Diagnostic& b) {
      return std::tie(a.location.line, a.location.column) < std::tie(b.location.line, b.location.column);
    });
    return std::move(diags_);
  }

private:
  void checkBlock(const Block& block)
  {
    bool returned = false;
    bool reported = false;
    for (const auto& stmt : block) {
      if (returned && !reported) {
        warn("UnreachableStatement", "statement follows a RETURN and can never execute", stmt.location);
        reported = true;
      }
      checkStatement(stmt);
      returned = returned || stmt.kind() == StatementKind::Return;
    }
  }

  void checkStatement(const Statement& stmt)
  {
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, ActionStmt>) {
            for (const auto& part : node.words) {
              if (const auto* ref = std::get_if<IdentRef>(&part)) checkRef(ref->name, stmt.location);
            }
          } else if constexpr (std::is_same_v<T, CallStmt>) {
            checkCall(node.call, stmt.location);
          } else if constexpr (std::is_same_v<T, ConditionalStmt> || std::is_same_v<T, UntilStmt>) {
            checkQuery(node.query, stmt.location);
            checkBlock(node.block);
          } else if constexpr (std::is_same_v<T, ForEachStmt>) {
            checkRef(node.listVar, stmt.location);
            loopVars_.push_back(node.elementVar);
            checkBlock(node.block);
            loopVars_.pop_back();
          } else if constexpr (std::is_same_v<T, AssignmentStmt>) {
            checkQuery(node.query, stmt.location);
            defined_.insert(node.target);
          } else if constexpr (std::is_same_v<T, ReturnStmt>) {
            checkQuery(node.query, stmt.location);
          }
        },
        stmt.node);
  }

  void checkQuery(const Query& query, const SourceLocation& loc)
  {
    for (const auto& part : query.parts) {
      if (const auto* ref = std::get_if<IdentRef>(&part)) checkRef(ref->name, loc);
      else if (const auto* call = std::get_if<CallExpr>(&part)) checkCall(*call, loc);
    }
  }

  void checkCall(const CallExpr& call, const SourceLocation& loc)
  {
    for (const auto& arg : call.args) checkRef(arg, loc);
    const Strategy* target = doc_.find(call.target);
    if (target == nullptr) {
      error("UnknownStrategy", "call to undefined strategy '" + call.target + "'", loc);
      return;
    }
    if (target->params.size() != call.args.size()) {
      error("ArityMismatch",
            "strategy '" + call.target + "' takes " + std::to_string(target->params.size()) +
                " argument(s) but " + std::to_string(call.args.size()) + " were given",
            loc);
    }
  }

  void checkRef(const std::string& name, const SourceLocation& loc)
  {
    if (defined_.contains(name)) return;
    if (std::find(loopVars_.begin(), loopVars_.end(), name) != loopVars_.end()) return;
    warn("UndefinedReference", "'" + name + "' is referenced before it is defined", loc);
  }

  void error(std::string code, std::string message, const SourceLocation& loc)
  {
    diags_.push_back({Severity::Error, std::move(code), std::move(message), loc});
  }

  void warn(std::string code, std::string message, const SourceLocation& loc)
  {
    diags_.push_back({Severity::Warning, std::move(code), std::move(message), loc});
  }

  const StrategyDoc& doc_;
  std::set<std::string> defined_;
  std::vector<std::string> loopVars_;
  std::vector<Diagnostic> diags_;
};

}  // namespace

std::vector<Diagnostic> validate(const StrategyDoc& doc)
{
  return Validator(doc).run();
}

}  // namespace roboto::syntax
