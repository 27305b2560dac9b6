#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include <httplib.h>

#include "fixtures.hpp"
#include "roboto/catalog/catalog.hpp"
#include "roboto/engine/json.hpp"
#include "roboto/service/http_server.hpp"
#include "roboto/service/service.hpp"

using namespace roboto;
using namespace roboto::service;
using engine::Json;
namespace fs = std::filesystem;

namespace {

class TempDir {
public:
  TempDir()
  {
    path_ = fs::temp_directory_path() / ("roboto-service-" + std::to_string(std::random_device{}()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

private:
  fs::path path_;
};

struct Reply {
  int status;
  Json body;
};

class ServiceTest : public ::testing::Test {
protected:
  void open(std::optional<fs::path> storeDir = std::nullopt, std::optional<fs::path> catalogDir = std::nullopt)
  {
    service_.reset();
    store_.reset();
    catalog_.reset();
    catalog_ = std::make_unique<catalog::Catalog>(catalogDir);
    store_ = std::make_unique<SessionStore>(storeDir);
    service_ = std::make_unique<Service>(*catalog_, *store_, [this] { return ++clock_; });
  }

  void SetUp() override { open(); }

  Reply call(const char* method, const std::string& path, const Json& body = nullptr)
  {
    Response r = service_->handle(method, path, body.is_null() ? std::string{} : body.dump());
    return {r.status, r.body.empty() ? Json(nullptr) : Json::parse(r.body)};
  }

  std::string builtinId(const std::string& name)
  {
    for (const auto& e : catalog_->list()) {
      if (e.name == name) return e.id;
    }
    throw std::runtime_error("no builtin " + name);
  }

  Json startHanoi(int level = 2)
  {
    Json args;
    for (const auto& [k, v] : test::hanoiArgs(level)) args[k] = v.asText();
    Reply r = call("POST", "/v1/sessions", {{"entryId", builtinId("towerOfHanoi")}, {"rootName", "towerOfHanoi"},
                                            {"args", args}});
    EXPECT_EQ(r.status, 201) << r.body.dump();
    return r.body;
  }

  engine::Timestamp clock_ = 1000;
  std::unique_ptr<catalog::Catalog> catalog_;
  std::unique_ptr<SessionStore> store_;
  std::unique_ptr<Service> service_;
};

int currentCount(const Json& view)
{
  int n = 0;
  for (const auto& s : view["statements"]) n += s["current"].get<bool>();
  return n;
}

}  // namespace

TEST_F(ServiceTest, ListsBuiltins)
{
  Reply r = call("GET", "/v1/strategies");
  ASSERT_EQ(r.status, 200);
  ASSERT_EQ(r.body["entries"].size(), 4u);
  for (const auto& e : r.body["entries"]) {
    for (const char* key : {"id", "name", "path", "summary", "strategyNames", "contentHash", "builtin"}) {
      EXPECT_TRUE(e.contains(key)) << key;
    }
  }
  Reply one = call("GET", "/v1/strategies/" + builtinId("debug"));
  ASSERT_EQ(one.status, 200);
  EXPECT_EQ(one.body["text"], test::readCorpus("debug.roboto"));
  EXPECT_EQ(call("GET", "/v1/strategies/ffffffffffff").status, 404);
}

TEST_F(ServiceTest, IngestsStrategies)
{
  Reply ok = call("POST", "/v1/strategies", {{"text", "STRATEGY s()\n\tDo it\n"}});
  ASSERT_EQ(ok.status, 201);
  EXPECT_EQ(ok.body["entry"]["name"], "s");
  Reply bad = call("POST", "/v1/strategies", {{"text", "STRATEGY s()\n\tDO nope()\n"}});
  EXPECT_EQ(bad.status, 400);
  EXPECT_EQ(bad.body["code"], "ValidationFailed");
  EXPECT_EQ(bad.body["diagnostics"][0]["code"], "UnknownStrategy");
  EXPECT_EQ(call("POST", "/v1/strategies", {{"txt", 1}}).body["code"], "BadRequest");
  EXPECT_EQ(call("DELETE", "/v1/strategies/" + builtinId("debug")).body["code"], "ReadOnly");
  EXPECT_EQ(call("DELETE", "/v1/strategies/" + ok.body["entry"]["id"].get<std::string>()).status, 204);
}

TEST_F(ServiceTest, CreateHanoiSession)
{
  Json created = startHanoi();
  Json view = created["stateView"];
  EXPECT_FALSE(created["sessionId"].get<std::string>().empty());
  EXPECT_EQ(view["sessionId"], created["sessionId"]);
  EXPECT_EQ(view["currentLocation"]["line"], 2);
  EXPECT_EQ(view["pendingInput"]["kind"], "QueryAnswer");
  EXPECT_EQ(view["status"]["kind"], "AwaitingInput");
  EXPECT_EQ(view["canStepBack"], false);
  EXPECT_EQ(view["lastOrdinal"], 1);
  EXPECT_EQ(view["stackDepth"], 1);
  EXPECT_EQ(view["visibleVariables"].size(), 4u);
  EXPECT_EQ(currentCount(view), 1);
  EXPECT_EQ(view["statements"].size(), 6u);
  EXPECT_EQ(view["statements"][0]["text"], "SET 'topDiscs' TO 'level' minus one");
  EXPECT_EQ(view["statements"][2]["depth"], 2);
  EXPECT_FALSE(view["statements"][2]["comment"].is_null());
  EXPECT_EQ(view["responsibilitySteps"].size(), 5u);
  // The Hanoi figure has no introductory comment.
  EXPECT_TRUE(view["introText"].is_null());

  Reply tdd = call("POST", "/v1/sessions", {{"entryId", builtinId("testDrivenDevelopment")}, {"args", {{"requirements", "r"}}}});
  ASSERT_EQ(tdd.status, 201);
  EXPECT_EQ(tdd.body["stateView"]["introText"].get<std::string>().rfind(" This is a strategy for doing design", 0), 0u);
}

TEST_F(ServiceTest, SessionRoutes)
{
  std::string id = startHanoi()["sessionId"];
  std::string base = "/v1/sessions/" + id;

  Reply mismatch = call("POST", base + "/next", {{"decision", true}});
  EXPECT_EQ(mismatch.status, 400);
  EXPECT_EQ(mismatch.body["code"], "InputKindMismatch");
  EXPECT_EQ(mismatch.body["location"]["line"], 2);

  Reply atStart = call("POST", base + "/previous");
  EXPECT_EQ(atStart.status, 400);
  EXPECT_EQ(atStart.body["code"], "AtStart");

  Reply step = call("POST", base + "/next", {{"input", {{"answer", "1"}}}, {"expectedOrdinal", 1}});
  ASSERT_EQ(step.status, 200) << step.body.dump();
  EXPECT_EQ(step.body["pendingInput"]["kind"], "ConditionDecision");
  EXPECT_EQ(step.body["canStepBack"], true);
  EXPECT_EQ(step.body["lastOrdinal"], 2);

  Reply inlineInput = call("POST", base + "/next", {{"decision", true}});
  ASSERT_EQ(inlineInput.status, 200);
  EXPECT_EQ(inlineInput.body["status"]["kind"], "ReadyToAdvance");
  EXPECT_TRUE(inlineInput.body["pendingInput"].is_null());
  Reply entered = call("POST", base + "/next", Json::object());
  ASSERT_EQ(entered.status, 200);
  EXPECT_EQ(entered.body["stackDepth"], 2);

  Reply edit = call("POST", base + "/variables", {{"name", "level"}, {"value", "7"}});
  ASSERT_EQ(edit.status, 200);
  bool found = false;
  for (const auto& v : edit.body["visibleVariables"]) {
    if (v["name"] == "level") found = v["value"] == "7";
  }
  EXPECT_TRUE(found);
  EXPECT_EQ(call("POST", base + "/variables", {{"name", "nope"}, {"value", "x"}}).body["code"],
            "UnknownOrHiddenVariable");

  Reply back = call("POST", base + "/previous");
  ASSERT_EQ(back.status, 200);

  Reply events = call("GET", base + "/events");
  ASSERT_EQ(events.status, 200);
  ASSERT_EQ(events.body["events"].size(), 6u);
  EXPECT_TRUE(events.body["events"][0].contains("root"));
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(events.body["events"][i]["ordinal"], i + 1);

  EXPECT_EQ(call("GET", "/v1/sessions/unknown").status, 404);
  EXPECT_EQ(call("POST", "/v1/sessions/unknown/next", {{"ack", true}}).status, 404);
  EXPECT_EQ(call("GET", "/v2/strategies").status, 404);
  EXPECT_EQ(service_->handle("POST", base + "/next", "{not json").status, 400);
}

TEST_F(ServiceTest, CreateErrors)
{
  EXPECT_EQ(call("POST", "/v1/sessions", {{"entryId", "ffffffffffff"}}).status, 404);
  Reply arity = call("POST", "/v1/sessions", {{"entryId", builtinId("towerOfHanoi")}, {"args", Json::object()}});
  EXPECT_EQ(arity.status, 400);
  EXPECT_EQ(arity.body["code"], "ArityMismatch");
  EXPECT_EQ(call("POST", "/v1/sessions", {{"entryId", builtinId("debug")}, {"rootName", "nope"}}).body["code"],
            "UnknownStrategy");
}

TEST_F(ServiceTest, StaleOrdinalIsRejectedWithoutEffect)
{
  std::string id = startHanoi()["sessionId"];
  std::string base = "/v1/sessions/" + id;
  ASSERT_EQ(call("POST", base + "/next", {{"answer", "1"}, {"expectedOrdinal", 1}}).status, 200);
  Json before = call("GET", base).body;
  Reply stale = call("POST", base + "/next", {{"decision", true}, {"expectedOrdinal", 1}});
  EXPECT_EQ(stale.status, 409);
  EXPECT_EQ(stale.body["code"], "Conflict");
  EXPECT_EQ(call("POST", base + "/previous", {{"expectedOrdinal", 5}}).status, 409);
  EXPECT_EQ(call("POST", base + "/variables", {{"name", "level"}, {"value", "1"}, {"expectedOrdinal", 0}}).status, 409);
  EXPECT_EQ(call("GET", base).body, before);
}

TEST_F(ServiceTest, ReadsAreIdempotent)
{
  std::string id = startHanoi()["sessionId"];
  Response a = service_->handle("GET", "/v1/sessions/" + id, "");
  Response b = service_->handle("GET", "/v1/sessions/" + id, "");
  EXPECT_EQ(a.body, b.body);
}

TEST_F(ServiceTest, ConcurrentMutationsLoseNoUpdates)
{
  Reply created = call("POST", "/v1/strategies", {{"text", "STRATEGY spin()\n\tUNTIL finished\n\t\tTurn the crank\n"}});
  Reply session = call("POST", "/v1/sessions", {{"entryId", created.body["entry"]["id"]}});
  std::string base = "/v1/sessions/" + session.body["sessionId"].get<std::string>();

  std::atomic<int> applied{0};
  std::atomic<int> conflicts{0};
  std::atomic<int> unexpected{0};
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&] {
      for (int i = 0; i < 50; ++i) {
        Json view = Json::parse(service_->handle("GET", base, "").body);
        Json body = view["pendingInput"]["kind"] == "ConditionDecision" ? Json{{"decision", false}}
                                                                         : Json{{"ack", true}};
        body["expectedOrdinal"] = view["lastOrdinal"];
        int status = service_->handle("POST", base + "/next", body.dump()).status;
        if (status == 200) ++applied;
        else if (status == 409) ++conflicts;
        else ++unexpected;
      }
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(unexpected.load(), 0);
  EXPECT_EQ(applied + conflicts, 400);
  Json final = call("GET", base).body;
  EXPECT_EQ(final["lastOrdinal"], 1 + applied.load());
  Json events = call("GET", base + "/events").body["events"];
  EXPECT_EQ(events.size(), static_cast<std::size_t>(1 + applied.load()));
}

TEST_F(ServiceTest, RestartReplaysTheEventLog)
{
  TempDir store, cat;
  open(store.path(), cat.path());
  Reply created = call("POST", "/v1/strategies", {{"text", test::readCorpus("testDrivenDevelopment.roboto") + "\n"}});
  ASSERT_EQ(created.status, 201);
  Reply session = call("POST", "/v1/sessions",
                       {{"entryId", created.body["entry"]["id"]}, {"args", {{"requirements", "r"}}}});
  std::string base = "/v1/sessions/" + session.body["sessionId"].get<std::string>();
  ASSERT_EQ(call("POST", base + "/next", {{"answer", "a, b"}}).status, 200);
  ASSERT_EQ(call("POST", base + "/next", {{"ack", true}}).status, 200);
  ASSERT_EQ(call("POST", base + "/variables", {{"name", "scenarios"}, {"value", Json::array({"a", "b", "c"})}}).status, 200);
  ASSERT_EQ(call("POST", base + "/next", {{"ack", true}}).status, 200);
  ASSERT_EQ(call("POST", base + "/previous").status, 200);
  Json before = call("GET", base).body;
  Json eventsBefore = call("GET", base + "/events").body;

  open(store.path(), cat.path());
  EXPECT_EQ(call("GET", base).body, before);
  EXPECT_EQ(call("GET", base + "/events").body, eventsBefore);
  ASSERT_EQ(call("POST", base + "/next", {{"ack", true}, {"expectedOrdinal", before["lastOrdinal"]}}).status, 200);
}

TEST_F(ServiceTest, TornTrailingEventLineIsIgnored)
{
  TempDir store;
  open(store.path());
  std::string id = startHanoi()["sessionId"];
  ASSERT_EQ(call("POST", "/v1/sessions/" + id + "/next", {{"answer", "1"}}).status, 200);
  Json before = call("GET", "/v1/sessions/" + id).body;
  {
    std::ofstream out(store.path() / id / "events.jsonl", std::ios::app);
    out << "{\"ordinal\":3,\"kind\":\"Adv";
  }
  open(store.path());
  EXPECT_EQ(call("GET", "/v1/sessions/" + id).body, before);
}

TEST_F(ServiceTest, ServesOverHttp)
{
  HttpServer server(*service_);
  int port = server.bind("127.0.0.1", 0);
  ASSERT_GT(port, 0);
  std::thread listener([&] { server.listen(); });

  httplib::Client client("127.0.0.1", port);
  auto list = client.Get("/v1/strategies");
  ASSERT_TRUE(list);
  EXPECT_EQ(list->status, 200);
  EXPECT_EQ(Json::parse(list->body)["entries"].size(), 4u);

  Json args;
  for (const auto& [k, v] : test::hanoiArgs(2)) args[k] = v.asText();
  Json request{{"entryId", builtinId("towerOfHanoi")}, {"args", args}};
  auto created = client.Post("/v1/sessions", request.dump(), "application/json");
  ASSERT_TRUE(created);
  EXPECT_EQ(created->status, 201);
  std::string id = Json::parse(created->body)["sessionId"];
  auto back = client.Post("/v1/sessions/" + id + "/previous", "", "application/json");
  ASSERT_TRUE(back);
  EXPECT_EQ(back->status, 400);
  EXPECT_EQ(Json::parse(back->body)["code"], "AtStart");
  auto missing = client.Get("/v1/sessions/none");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);

  server.stop();
  listener.join();
}
