#include "roboto/engine/responsibility.hpp"

#include "roboto/engine/engine.hpp"
#include "roboto/error.hpp"

namespace roboto::engine {

using namespace roboto::syntax;

std::string_view toString(Actor actor)
{
  return actor == Actor::Developer ? "developer" : "computer";
}

namespace {

constexpr auto D = Actor::Developer;
constexpr auto C = Actor::Computer;

const char* const kFindValues = "Find the values of any referenced variables in the variables pane";

std::vector<ResponsibilityStep> callSteps(const CallExpr& call, const std::string& delivery)
{
  return {
      {D, "Click next to start the sub-strategy '" + call.target + "'"},
      {C, "Create a new stack frame for '" + call.target + "' and copy the argument values into its parameters"},
      {C, "Hide the variables of the calling strategy"},
      {C, "Move the program counter to the first statement of '" + call.target + "'"},
      {C, delivery},
  };
}

}  // namespace

std::vector<ResponsibilityStep> responsibilitySteps(const ExecutionState& state)
{
  const Statement* stmt = currentStatement(state);
  if (stmt == nullptr) throw Error(ErrorCode::SessionCompleted, "there is no current statement");

  switch (stmt->kind()) {
    case StatementKind::Action:
      return {
          {D, "Perform the described action"},
          {D, "Click next when the action is done"},
          {C, "Move the program counter to the next statement"},
      };
    case StatementKind::Call:
      return callSteps(std::get<CallStmt>(stmt->node).call,
                       "When the sub-strategy returns, restore this strategy's variables and continue after the call");
    case StatementKind::Conditional:
      return {
          {D, kFindValues},
          {D, "Interpret the query as true or false"},
          {D, "Click True or False"},
          {C, "Determine the next statement: the first statement of the block if true, otherwise the statement after it"},
          {C, "Advance the program counter"},
      };
    case StatementKind::Until:
      return {
          {D, kFindValues},
          {D, "Interpret the query as true or false"},
          {D, "Click True or False"},
          {C, "Determine the next statement: leave the loop if true, otherwise run its block and ask again"},
          {C, "Advance the program counter"},
      };
    case StatementKind::ForEach: {
      const auto& loop = std::get<ForEachStmt>(stmt->node);
      return {
          {D, "Click next to continue the loop over '" + loop.listVar + "'"},
          {C, "Assign '" + loop.elementVar + "' the next element of '" + loop.listVar + "'"},
          {C, "Move into the loop body, or past the loop once every element has been visited"},
      };
    }
    case StatementKind::Assignment: {
      const auto& assign = std::get<AssignmentStmt>(stmt->node);
      if (const CallExpr* call = assign.query.call()) {
        return callSteps(*call, "Store the returned value in '" + assign.target + "' and continue");
      }
      return {
          {D, kFindValues},
          {D, "Perform the query and enter the result as the value of '" + assign.target +
                  "' (separate list items with commas)"},
          {D, "Click next"},
          {C, "Store the value in '" + assign.target + "' and show it in the variables pane"},
          {C, "Move the program counter to the next statement"},
      };
    }
    case StatementKind::Return: {
      const Query& query = std::get<ReturnStmt>(stmt->node).query;
      if (const CallExpr* call = query.call()) {
        return callSteps(*call, "Return the sub-strategy's result from this strategy as well");
      }
      if (query.isNothing() || query.soleReference()) {
        return {
            {D, "Click next to finish this strategy"},
            {C, query.isNothing() ? "Return nothing to the caller"
                                  : "Return the value of '" + query.soleReference()->name + "' to the caller"},
            {C, "Discard this strategy's variables and resume the caller after its call"},
        };
      }
      return {
          {D, kFindValues},
          {D, "Perform the query and enter the value to return"},
          {D, "Click next"},
          {C, "Return the value to the caller"},
          {C, "Discard this strategy's variables and resume the caller after its call"},
      };
    }
  }
  return {};
}

}  // namespace roboto::engine
