#ifndef SATEN_TOOLS_SERVICE_H_
#define SATEN_TOOLS_SERVICE_H_

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include <json.hpp>

#include "saten/engine.h"
#include "saten/error.h"
#include "saten/examples.h"

namespace httplib {
class Server;
}

namespace saten::service {

using nlohmann::json;

struct Response {
  int status = 200;
  json body;
};

// 400 parse and config errors, 404, 409 stale, 422 contradictions, 504
// budget exhaustion.
int StatusFor(ErrorKind kind);

// {"degrees": [{"formula", "degree"}...], "ordinal": [[...], ...]}
json ToJson(const Ranking& r);
json ToJson(const Belief& b);
json ToJson(const ExtractionTrace& t);
json ToJson(const StrategyConfig& cfg);
json ToJson(const RevisionOutcome& out);
json ToJson(const ExampleEntry& e);

// Accepts a list of {"formula", "degree"} objects, an object with a
// "degrees" list, or ranking-file text.
Ranking RankingFromJson(const json& j);
// Fields missing from j keep their value in `base`.
StrategyConfig ConfigFromJson(const json& j, StrategyConfig base = {});

// Request handling without the transport. Sessions are independent; calls on
// one session are serialized.
class Api {
 public:
  Response CreateSession(const json& body);
  Response GetSession(const std::string& id);
  Response Revise(const std::string& id, const json& body);
  Response WhatIf(const std::string& id, const json& body);
  Response Extract(const std::string& id, const json& body);
  Response Integrate(const std::string& id, const json& body);
  Response DegreeQuery(const std::string& id, const std::string& wff);
  Response Trace(const std::string& id);
  Response Undo(const std::string& id);
  Response ListExamples();

 private:
  struct Slot {
    explicit Slot(Session s) : session(std::move(s)) {}
    std::mutex mu;
    Session session;
  };

  std::shared_ptr<Slot> Find(const std::string& id);
  Response RunRevision(const std::string& id, const json& body, bool commit);

  std::mutex mu_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
  std::uint64_t next_id_ = 1;
};

// Registers every endpoint on `server`.
void Mount(httplib::Server& server, Api& api);

}  // namespace saten::service

#endif  // SATEN_TOOLS_SERVICE_H_
