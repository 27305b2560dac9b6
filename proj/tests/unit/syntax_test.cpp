#include <gtest/gtest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "roboto/syntax/format.hpp"
#include "roboto/syntax/parser.hpp"
#include "roboto/syntax/validate.hpp"

using namespace roboto;
using namespace roboto::syntax;
using roboto::test::loadCorpus;
using roboto::test::readCorpus;

namespace {

std::vector<StatementKind> kinds(const Block& block)
{
  std::vector<StatementKind> out;
  for (const auto& s : block) out.push_back(s.kind());
  return out;
}

ParseResult parseText(const std::string& text)
{
  return parse(text, "t.roboto");
}

std::vector<std::string> codes(const std::vector<Diagnostic>& diags)
{
  std::vector<std::string> out;
  for (const auto& d : diags) out.push_back(d.code);
  return out;
}

}  // namespace

TEST(Corpus, RenameVariableShape)
{
  auto doc = loadCorpus("renameVariable.roboto");
  ASSERT_EQ(doc->strategies.size(), 1u);
  const Strategy& s = doc->strategies[0];
  EXPECT_EQ(s.name, "renameVariable");
  EXPECT_EQ(s.params, std::vector<std::string>{"name"});
  EXPECT_EQ(kinds(s.body), (std::vector{StatementKind::Assignment, StatementKind::ForEach, StatementKind::Assignment,
                                        StatementKind::ForEach}));
}

TEST(Corpus, TowerOfHanoiShape)
{
  auto doc = loadCorpus("towerOfHanoi.roboto");
  const Strategy& s = doc->strategies.at(0);
  EXPECT_EQ(s.params, (std::vector<std::string>{"level", "source", "target", "auxiliary"}));
  ASSERT_EQ(kinds(s.body),
            (std::vector{StatementKind::Assignment, StatementKind::Conditional, StatementKind::Conditional}));
  EXPECT_EQ(kinds(*s.body[1].block()), (std::vector{StatementKind::Call, StatementKind::Action}));
  EXPECT_EQ(kinds(*s.body[2].block()), (std::vector{StatementKind::Call}));
  EXPECT_TRUE(validate(*doc).empty());
}

TEST(Corpus, DebugDefinesTwoStrategiesAndOneWarning)
{
  auto doc = loadCorpus("debug.roboto");
  ASSERT_EQ(doc->strategies.size(), 2u);
  EXPECT_EQ(doc->strategies[0].name, "debug");
  EXPECT_TRUE(doc->strategies[0].params.empty());
  EXPECT_EQ(doc->strategies[1].name, "localizeWrongValue");

  auto diags = validate(*doc);
  ASSERT_EQ(diags.size(), 1u);
  EXPECT_EQ(diags[0].severity, Severity::Warning);
  EXPECT_EQ(diags[0].code, "UndefinedReference");
  EXPECT_NE(diags[0].message.find("'value'"), std::string::npos);
}

TEST(Corpus, AllFilesParseWithoutErrors)
{
  for (const char* file : {"renameVariable.roboto", "towerOfHanoi.roboto", "debug.roboto",
                           "testDrivenDevelopment.roboto", "variants/towerOfHanoiCorrected.roboto"}) {
    auto result = parse(readCorpus(file), file);
    EXPECT_TRUE(result.ok()) << file;
    EXPECT_TRUE(result.diagnostics.empty()) << file;
  }
}

namespace {

bool looksQuoted(const std::string& word)
{
  auto open = word.find('\'');
  if (open == std::string::npos) return false;
  auto close = word.find('\'', open + 1);
  if (close == std::string::npos || close == open + 1) return false;
  return std::all_of(word.begin() + static_cast<long>(open) + 1, word.begin() + static_cast<long>(close),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }) &&
         (open == 0 || !std::isalnum(static_cast<unsigned char>(word[open - 1])));
}

struct RefCount {
  std::size_t refs = 0;
  std::size_t quotedWords = 0;
};

RefCount countReferences(const StrategyDoc& doc)
{
  RefCount out;
  auto part = [&](const auto& p) {
    using T = std::decay_t<decltype(p)>;
    if constexpr (std::is_same_v<T, IdentRef>) ++out.refs;
    if constexpr (std::is_same_v<T, CallExpr>) out.refs += p.args.size();
    if constexpr (std::is_same_v<T, Word>) out.quotedWords += looksQuoted(p.text);
  };
  for (const auto& strategy : doc.strategies) {
    forEachStatement(strategy.body, [&](const Statement& stmt, int) {
      std::visit(
          [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, ActionStmt>) {
              for (const auto& w : node.words) std::visit(part, w);
            } else if constexpr (std::is_same_v<T, CallStmt>) {
              out.refs += node.call.args.size();
            } else if constexpr (std::is_same_v<T, ForEachStmt>) {
              ++out.refs;
            } else {
              for (const auto& p : node.query.parts) std::visit(part, p);
            }
          },
          stmt.node);
    });
  }
  return out;
}

}  // namespace

TEST(Corpus, QuotedIdentifiersBecomeReferences)
{
  for (const char* file : {"renameVariable.roboto", "towerOfHanoi.roboto", "debug.roboto",
                           "testDrivenDevelopment.roboto"}) {
    EXPECT_EQ(countReferences(*loadCorpus(file)).quotedWords, 0u) << file;
  }
  // Hand count over the Hanoi figure: 14 quoted identifiers, one of which is
  // an assignment target.
  EXPECT_EQ(countReferences(*loadCorpus("towerOfHanoi.roboto")).refs, 13u);
}

TEST(Parser, MinimalStrategy)
{
  auto r = parseText("STRATEGY s ()\n  Do the thing\n");
  ASSERT_TRUE(r.ok());
  const Strategy& s = r.doc->strategies[0];
  EXPECT_EQ(s.name, "s");
  EXPECT_TRUE(s.params.empty());
  ASSERT_EQ(kinds(s.body), std::vector{StatementKind::Action});
  const auto& words = std::get<ActionStmt>(s.body[0].node).words;
  ASSERT_EQ(words.size(), 3u);
  EXPECT_EQ(std::get<Word>(words[0]).text, "Do");
}

TEST(Parser, KeywordsAreCaseInsensitive)
{
  auto r = parseText("strategy s ('a')\n\tif 'a' is set\n\t\tset 'b' to something\n\treturn 'b'\n");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(kinds(r.doc->strategies[0].body), (std::vector{StatementKind::Conditional, StatementKind::Return}));
}

TEST(Parser, LocationsAreOneBased)
{
  auto r = parseText("STRATEGY s()\n\tFirst step\n\tSecond step\n");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.doc->strategies[0].location, (SourceLocation{1, 1, "t.roboto"}));
  EXPECT_EQ(r.doc->strategies[0].body[1].location, (SourceLocation{3, 2, "t.roboto"}));
}

TEST(Parser, TrailingPeriodIsStripped)
{
  auto r = parseText("STRATEGY s()\n\tRun the tests.\n");
  ASSERT_TRUE(r.ok());
  const auto& words = std::get<ActionStmt>(r.doc->strategies[0].body[0].node).words;
  EXPECT_EQ(std::get<Word>(words.back()).text, "tests");
}

TEST(Parser, ApostropheInWordIsNotAReference)
{
  auto r = parseText("STRATEGY s('value')\n\tIF 'value' isn't nothing\n\t\tNote it\n");
  ASSERT_TRUE(r.ok());
  const auto& q = std::get<ConditionalStmt>(r.doc->strategies[0].body[0].node).query;
  ASSERT_EQ(q.parts.size(), 3u);
  EXPECT_EQ(std::get<IdentRef>(q.parts[0]).name, "value");
  EXPECT_EQ(std::get<Word>(q.parts[1]).text, "isn't");
  EXPECT_EQ(std::get<Word>(q.parts[2]).text, "nothing");
}

TEST(Parser, EmbeddedCallOnlyForKnownStrategies)
{
  auto r = parseText("STRATEGY a('x')\n\tRETURN helper('x')\n\tSET 'y' TO f('x')\n"
                     "STRATEGY helper('z')\n\tRETURN nothing\n");
  ASSERT_TRUE(r.ok());
  const auto& body = r.doc->strategies[0].body;
  const CallExpr* call = std::get<ReturnStmt>(body[0].node).query.call();
  ASSERT_NE(call, nullptr);
  EXPECT_EQ(call->target, "helper");
  EXPECT_EQ(call->args, std::vector<std::string>{"x"});
  EXPECT_EQ(std::get<AssignmentStmt>(body[1].node).query.call(), nullptr);
  EXPECT_TRUE(std::get<ReturnStmt>(r.doc->strategies[1].body[0].node).query.isNothing());
}

TEST(Parser, TwoCallsInOneQueryIsAnError)
{
  auto r = parseText("STRATEGY a('x')\n\tRETURN b('x') and b('x')\nSTRATEGY b('z')\n\tRETURN nothing\n");
  EXPECT_FALSE(r.ok());
}

TEST(Parser, DoWithoutCallSyntaxIsAnAction)
{
  auto r = parseText("STRATEGY s()\n\tDo the thing\n\tDO s()\n");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(kinds(r.doc->strategies[0].body), (std::vector{StatementKind::Action, StatementKind::Call}));
}

TEST(Parser, CommentsAttachToNextStatementOrStrategy)
{
  auto r = parseText("# about s\nSTRATEGY s()\n\t# first\n\t# second\n\tStep one\n");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.doc->strategies[0].leadingComment, std::optional<std::string>(" about s"));
  EXPECT_EQ(r.doc->strategies[0].body[0].comment, std::optional<std::string>(" first\n second"));
}

TEST(Parser, BlockMembershipFollowsIndentation)
{
  auto r = parseText("STRATEGY s('l')\n"
                     "  FOR EACH 'i' IN 'l'\n"
                     "    UNTIL done\n"
                     "      Work on 'i'\n"
                     "    Log 'i'\n"
                     "  Finish\n");
  ASSERT_TRUE(r.ok());
  const auto& body = r.doc->strategies[0].body;
  ASSERT_EQ(kinds(body), (std::vector{StatementKind::ForEach, StatementKind::Action}));
  EXPECT_EQ(kinds(*body[0].block()), (std::vector{StatementKind::Until, StatementKind::Action}));
  EXPECT_EQ(body[0].block()->at(0).block()->size(), 1u);
}

TEST(Parser, IndentationErrors)
{
  // Two levels deeper after a block statement.
  EXPECT_FALSE(parseText("STRATEGY s()\n\tIF x\n\t\t\tStep\n").ok());
  // Mixed tabs and spaces.
  EXPECT_FALSE(parseText("STRATEGY s()\n\tIF x\n\t  Step\n").ok());
  EXPECT_FALSE(parseText("STRATEGY s()\n\tStep\n  Other\n").ok());
  // Statement indented under nothing.
  EXPECT_FALSE(parseText("STRATEGY s()\nStep\n").ok());
}

TEST(Parser, EmptyBlockIsAnError)
{
  auto r = parseText("STRATEGY s()\n\tIF x\n\tStep\n");
  EXPECT_FALSE(r.ok());
}

TEST(Parser, StructuralErrors)
{
  EXPECT_FALSE(parseText("").ok());
  EXPECT_FALSE(parseText("# only a comment\n").ok());
  EXPECT_FALSE(parseText("STRATEGY s()\n").ok());
  EXPECT_FALSE(parseText("STRATEGY s('a' 'a')\n\tStep\n").ok());
  auto dup = parseText("STRATEGY s()\n\tStep\nSTRATEGY s()\n\tStep\n");
  EXPECT_FALSE(dup.ok());
  EXPECT_NE(std::find(codes(dup.diagnostics).begin(), codes(dup.diagnostics).end(), "DuplicateStrategy"),
            codes(dup.diagnostics).end());
}

TEST(Parser, ContinuationLineJoinsTheStatementAbove)
{
  auto r = parseText("STRATEGY s()\n\tRun the program and capture\n\t\tits faulty output\n\tDone\n");
  ASSERT_TRUE(r.ok());
  const auto& body = r.doc->strategies[0].body;
  ASSERT_EQ(body.size(), 2u);
  EXPECT_EQ(formatStatementLine(body[0]), "Run the program and capture its faulty output");
}

TEST(Validate, UnknownStrategyAndArity)
{
  auto r = parseText("STRATEGY s('x')\n\tDO missing('x')\n\tDO s()\n");
  ASSERT_TRUE(r.ok());
  auto diags = validate(*r.doc);
  EXPECT_EQ(codes(diags), (std::vector<std::string>{"UnknownStrategy", "ArityMismatch"}));
  EXPECT_EQ(diags[0].location.line, 2);
  EXPECT_TRUE(hasErrors(diags));
}

TEST(Validate, UndefinedReferenceRespectsLoopScope)
{
  auto r = parseText("STRATEGY s('xs')\n"
                     "\tFOR EACH 'x' IN 'xs'\n"
                     "\t\tLook at 'x'\n"
                     "\tLook at 'x' again\n");
  ASSERT_TRUE(r.ok());
  auto diags = validate(*r.doc);
  ASSERT_EQ(diags.size(), 1u);
  EXPECT_EQ(diags[0].code, "UndefinedReference");
  EXPECT_EQ(diags[0].location.line, 4);
  EXPECT_FALSE(hasErrors(diags));
}

TEST(Validate, UnreachableAfterReturn)
{
  auto r = parseText("STRATEGY s()\n\tRETURN nothing\n\tNever\n\tNor this\n");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(codes(validate(*r.doc)), std::vector<std::string>{"UnreachableStatement"});
}

TEST(Diagnostic, Format)
{
  Diagnostic d{Severity::Warning, "UndefinedReference", "msg", {3, 5, "f.roboto"}};
  EXPECT_EQ(formatDiagnostic(d), "f.roboto:3:5 warning UndefinedReference msg");
}
