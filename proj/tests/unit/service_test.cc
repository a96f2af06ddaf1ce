#include "service.h"

#include <gtest/gtest.h>
#include <httplib.h>

#include <future>
#include <thread>

#include "generators.h"

namespace saten::service {
namespace {

json TweetyBody() {
  return {{"ranking",
           {{{"formula", "Bird(tweety)"}, {"degree", "0.8"}},
            {{"formula", "*X(Bird(X)->Flies(X))"}, {"degree", "0.6"}},
            {{"formula", "*X(Penguin(X)->-Flies(X))"}, {"degree", "0.9"}}}},
          {"config", {{"strategy", "maxi"}}}};
}

std::string NewSession(Api& api, const json& body = TweetyBody()) {
  Response r = api.CreateSession(body);
  EXPECT_EQ(r.status, 201) << r.body.dump();
  return r.body["id"];
}

std::string Category(const Response& r) {
  return r.body["error"]["category"].get<std::string>();
}

TEST(Codec, RankingRoundTrip) {
  gen::Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    Ranking r = gen::PropositionalRanking(rng, 8, 4, 5, 2);
    EXPECT_EQ(RankingFromJson(ToJson(r)), r);
    EXPECT_EQ(RankingFromJson(ToJson(r)["degrees"]), r);
  }
  EXPECT_EQ(RankingFromJson(json("0.5\ta\n")).size(), 1u);
}

TEST(Codec, Config) {
  StrategyConfig cfg = ConfigFromJson(
      {{"strategy", "quick"}, {"seed", 7}, {"half_life", "1/2"}});
  EXPECT_EQ(cfg.strategy, Strategy::kQuick);
  EXPECT_EQ(cfg.seed, 7u);
  EXPECT_EQ(*cfg.half_life, Degree(1, 2));
  EXPECT_EQ(ConfigFromJson(ToJson(cfg)).seed, 7u);
  EXPECT_THROW(ConfigFromJson({{"strategy", "fast"}}), Error);
  EXPECT_THROW(ConfigFromJson({{"colour", "red"}}), Error);
  EXPECT_THROW(
      ConfigFromJson({{"strategy", "standard"}, {"subsumption", true}}),
      Error);
}

TEST(Api, TweetyRevision) {
  Api api;
  std::string id = NewSession(api);
  Response r = api.Revise(id, {{"formula", "Penguin(tweety)"}, {"degree", "0.7"}});
  ASSERT_EQ(r.status, 200) << r.body.dump();
  ASSERT_EQ(r.body["removed"].size(), 1u);
  EXPECT_EQ(r.body["removed"][0]["formula"], "*X(Bird(X)->Flies(X))");
  EXPECT_EQ(r.body["removed"][0]["degree"], "0.6");
  EXPECT_EQ(r.body["version"], 1);

  Response s = api.GetSession(id);
  EXPECT_TRUE(s.body["consistent"].get<bool>());
  EXPECT_EQ(s.body["ranking"]["degrees"].size(), 3u);
  EXPECT_EQ(s.body["ranking"]["ordinal"].size(), 3u);
  EXPECT_EQ(api.Trace(id).body["trace"]["strategy"], "maxi");
}

TEST(Api, Degrees) {
  Api api;
  std::string id = NewSession(api);
  EXPECT_EQ(api.DegreeQuery(id, "p|-p").body["degree"], "1");
  EXPECT_EQ(api.DegreeQuery(id, "Flies(tweety)").body["degree"], "0.6");
  EXPECT_EQ(api.DegreeQuery(id, "Penguin(tweety)").body["degree"], "0");
  Response bad = api.DegreeQuery(id, "a__b");
  EXPECT_EQ(bad.status, 400);
  EXPECT_EQ(Category(bad), "ReservedNameError");
}

TEST(Api, WhatIfIsPure) {
  Api api;
  std::string id = NewSession(api);
  json body = {{"formula", "Penguin(tweety)"}};
  Response a = api.WhatIf(id, body);
  Response b = api.WhatIf(id, body);
  ASSERT_EQ(a.status, 200);
  EXPECT_EQ(a.body, b.body);
  EXPECT_EQ(api.GetSession(id).body["version"], 0);
}

TEST(Api, ErrorStatuses) {
  Api api;
  std::string id = NewSession(api);
  Response stale = api.Revise(id, {{"formula", "a"}, {"base_version", 3}});
  EXPECT_EQ(stale.status, 409);
  EXPECT_EQ(Category(stale), "StaleOutcome");

  Response contra = api.Revise(id, {{"formula", "a&-a"}});
  EXPECT_EQ(contra.status, 422);
  EXPECT_EQ(Category(contra), "ContradictoryInput");

  Response syntax = api.Revise(id, {{"formula", "a&"}});
  EXPECT_EQ(syntax.status, 400);
  EXPECT_EQ(Category(syntax), "SyntaxError");
  EXPECT_TRUE(syntax.body["error"].contains("position"));

  EXPECT_EQ(api.GetSession("nope").status, 404);
  EXPECT_EQ(api.Undo(id).status, 409);

  Response cfg = api.CreateSession({{"config", {{"strategy", "fast"}}}});
  EXPECT_EQ(cfg.status, 400);
  EXPECT_EQ(Category(cfg), "ConfigError");

  Response dup = api.CreateSession(
      {{"ranking", "0.5\ta\n0.6\ta\n"}});
  EXPECT_EQ(dup.status, 400);
  EXPECT_EQ(Category(dup), "DuplicateBelief");
}

TEST(Api, BudgetExhaustionReportsPartialTrace) {
  Api api;
  json body = TweetyBody();
  body["config"]["budget"] = {{"clauses", 1}};
  std::string id = NewSession(api, body);
  Response r = api.Revise(id, {{"formula", "Penguin(tweety)"}});
  EXPECT_EQ(r.status, 504) << r.body.dump();
  EXPECT_TRUE(Category(r) == "BudgetExceeded" || Category(r) == "ProverUnknown");
  EXPECT_FALSE(r.body["partial_trace"]["ranks"].empty());
  EXPECT_EQ(api.GetSession(id).body["version"], 0);
}

TEST(Api, UndoAndStaleCommit) {
  Api api;
  std::string id = NewSession(api);
  json before = api.GetSession(id).body["ranking"];
  ASSERT_EQ(api.Revise(id, {{"formula", "Penguin(tweety)"}, {"base_version", 0}})
                .status,
            200);
  EXPECT_EQ(api.Revise(id, {{"formula", "Penguin(tweety)"}, {"base_version", 0}})
                .status,
            409);
  Response u = api.Undo(id);
  ASSERT_EQ(u.status, 200);
  EXPECT_EQ(u.body["ranking"], before);
}

TEST(Api, ExtractAndIntegrate) {
  Api api;
  std::string id = NewSession(
      api, {{"ranking", "0.8\ta\n0.4\t-a\n0.3\tb\n"}});
  Response x = api.Extract(id, json::object());
  ASSERT_EQ(x.status, 200) << x.body.dump();
  ASSERT_EQ(x.body["removed"].size(), 1u);
  EXPECT_EQ(x.body["removed"][0]["formula"], "-a");

  Response i = api.Integrate(
      id, {{"rankings", json::array({"0.9\t-b\n"})}});
  ASSERT_EQ(i.status, 200) << i.body.dump();
  EXPECT_EQ(i.body["removed"][0]["formula"], "b");
  EXPECT_TRUE(i.body["consistent"].get<bool>());
}

TEST(Api, Examples) {
  Api api;
  Response r = api.ListExamples();
  ASSERT_EQ(r.status, 200);
  bool contrast = false;
  for (const json& e : r.body["examples"]) {
    if (e["name"] == "contrast") {
      contrast = true;
      EXPECT_EQ(e["ranking"]["degrees"].size(), 9u);
      EXPECT_EQ(e["expected"].size(), 6u);
    }
  }
  EXPECT_TRUE(contrast);
  std::string id = NewSession(api, {{"example", "tweety"}});
  EXPECT_EQ(api.GetSession(id).body["ranking"]["degrees"].size(), 3u);
}

TEST(Http, ConcurrentTweetySessions) {
  Api api;
  httplib::Server server;
  Mount(server, api);
  int port = server.bind_to_any_port("127.0.0.1");
  ASSERT_GT(port, 0);
  std::thread loop([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  auto replay = [port] {
    httplib::Client c("127.0.0.1", port);
    auto created = c.Post("/sessions", TweetyBody().dump(), "application/json");
    if (!created || created->status != 201) return json();
    std::string id = json::parse(created->body)["id"];
    json rev = {{"formula", "Penguin(tweety)"}, {"degree", "0.7"}};
    auto revised = c.Post("/sessions/" + id + "/revise", rev.dump(),
                          "application/json");
    auto deg = c.Get("/sessions/" + id + "/degree?wff=p%7C-p");
    if (!revised || !deg) return json();
    json out = json::parse(revised->body);
    return json{{"removed", out["removed"]},
                {"after", out["after"]},
                {"tautology", json::parse(deg->body)["degree"]}};
  };

  std::vector<std::future<json>> runs;
  for (int i = 0; i < 8; ++i) runs.push_back(std::async(std::launch::async, replay));
  std::vector<json> results;
  for (auto& f : runs) results.push_back(f.get());
  server.stop();
  loop.join();

  ASSERT_FALSE(results[0].is_null());
  EXPECT_EQ(results[0]["tautology"], "1");
  EXPECT_EQ(results[0]["removed"][0]["formula"], "*X(Bird(X)->Flies(X))");
  for (const json& r : results) EXPECT_EQ(r, results[0]);
}

TEST(Http, MalformedJson) {
  Api api;
  httplib::Server server;
  Mount(server, api);
  int port = server.bind_to_any_port("127.0.0.1");
  std::thread loop([&] { server.listen_after_bind(); });
  server.wait_until_ready();
  httplib::Client c("127.0.0.1", port);
  auto r = c.Post("/sessions", "{not json", "application/json");
  server.stop();
  loop.join();
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 400);
  EXPECT_EQ(json::parse(r->body)["error"]["category"], "RequestError");
}

}  // namespace
}  // namespace saten::service
