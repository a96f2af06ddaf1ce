#include "service.h"

#include <httplib.h>

#include <functional>

#include "saten/ranking_io.h"

namespace saten::service {

int StatusFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNotFound: return 404;
    case ErrorKind::kStaleOutcome: return 409;
    case ErrorKind::kContradictoryInput:
    case ErrorKind::kProtectedInconsistent:
    case ErrorKind::kInconsistentInput: return 422;
    case ErrorKind::kBudgetExceeded:
    case ErrorKind::kProverUnknown: return 504;
    default: return 400;
  }
}

// {{{ JSON codec

json ToJson(const Belief& b) {
  return {{"formula", Print(b.formula)}, {"degree", b.degree.ToString()}};
}

namespace {

json Beliefs(const std::vector<Belief>& bs) {
  json out = json::array();
  for (const Belief& b : bs) out.push_back(ToJson(b));
  return out;
}

json Prints(const std::vector<Formula>& fs) {
  json out = json::array();
  for (const Formula& f : fs) out.push_back(Print(f));
  return out;
}

Formula ParseField(const json& body, const char* key) {
  if (!body.contains(key) || !body[key].is_string()) {
    throw Error(ErrorKind::kSyntax,
                std::string("missing formula field '") + key + "'");
  }
  return Parse(body[key].get<std::string>());
}

Degree DegreeField(const json& j) {
  if (j.is_string()) return Degree::Parse(j.get<std::string>());
  if (j.is_number_integer()) return Degree(j.get<std::int64_t>(), 1);
  throw Error(ErrorKind::kDomain, "degrees travel as decimal strings");
}

}  // namespace

json ToJson(const Ranking& r) {
  std::vector<Belief> sorted = r.beliefs();
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Belief& a, const Belief& b) {
                     return a.degree > b.degree;
                   });
  json ordinal = json::array();
  for (const auto& rank : ToOrdinal(r).ranks) ordinal.push_back(Prints(rank));
  return {{"degrees", Beliefs(sorted)}, {"ordinal", ordinal}};
}

json ToJson(const ExtractionTrace& t) {
  json ranks = json::array();
  for (const RankRecord& r : t.ranks) {
    json conflicts = json::array();
    for (const auto& c : r.conflicts) conflicts.push_back(Prints(c));
    ranks.push_back({{"threshold", r.threshold.ToString()},
                     {"candidates", Prints(r.candidates)},
                     {"conflicts", conflicts},
                     {"subsumed", Prints(r.subsumed)},
                     {"removed", Prints(r.removed)},
                     {"kept", Prints(r.kept)},
                     {"regathered", Prints(r.regathered)},
                     {"warnings", r.warnings}});
  }
  return {{"strategy", ToString(t.strategy)},
          {"protected", t.protected_formula ? json(Print(*t.protected_formula))
                                            : json(nullptr)},
          {"notes", t.notes},
          {"ranks", ranks},
          {"text", t.ToText()}};
}

json ToJson(const StrategyConfig& cfg) {
  return {{"strategy", ToString(cfg.strategy)},
          {"subsumption", cfg.subsumption_removal},
          {"recovery", cfg.recovery},
          {"half_life",
           cfg.half_life ? json(cfg.half_life->ToString()) : json(nullptr)},
          {"seed", cfg.seed},
          {"hybrid_mode",
           cfg.hybrid_mode == HybridMode::kLiteral ? "literal" : "core"},
          {"budget",
           {{"depth", cfg.budget.max_depth},
            {"clauses", cfg.budget.max_clauses},
            {"time_ms", cfg.budget.max_time.count()}}}};
}

json ToJson(const RevisionOutcome& out) {
  return {{"before", ToJson(out.before)},
          {"after", ToJson(out.after)},
          {"incoming", ToJson(out.incoming)},
          {"removed", Beliefs(out.removed)},
          {"recovered", Beliefs(out.recovered)},
          {"trace", ToJson(out.trace)},
          {"decay_applied", out.decay_applied
                                ? json(out.decay_applied->ToString())
                                : json(nullptr)},
          {"config", ToJson(out.config)}};
}

json ToJson(const ExampleEntry& e) {
  json script = json::array();
  for (const ScriptedRevision& s : e.script) {
    script.push_back(
        {{"formula", Print(s.formula)}, {"degree", s.degree.ToString()}});
  }
  json expected = json::object();
  for (const auto& [s, beliefs] : e.expected) {
    expected[std::string(ToString(s))] = beliefs;
  }
  return {{"name", e.name},
          {"category", ToString(e.category)},
          {"description", e.description},
          {"ranking", ToJson(e.initial)},
          {"script", script},
          {"expected", expected}};
}

Ranking RankingFromJson(const json& j) {
  if (j.is_string()) return ParseRanking(j.get<std::string>());
  const json& list = j.is_object() ? j.at("degrees") : j;
  if (!list.is_array()) {
    throw Error(ErrorKind::kFileParse, "ranking must be a list of beliefs");
  }
  Ranking r;
  for (const json& b : list) {
    r.Insert(ParseField(b, "formula"), DegreeField(b.at("degree")));
  }
  return r;
}

StrategyConfig ConfigFromJson(const json& j, StrategyConfig cfg) {
  if (j.is_null()) return cfg;
  if (!j.is_object()) throw Error(ErrorKind::kConfig, "config must be an object");
  for (const auto& [key, v] : j.items()) {
    if (key == "strategy") {
      cfg.strategy = ParseStrategy(v.get<std::string>());
    } else if (key == "subsumption") {
      cfg.subsumption_removal = v.get<bool>();
    } else if (key == "recovery") {
      cfg.recovery = v.get<bool>();
    } else if (key == "half_life") {
      cfg.half_life = v.is_null() ? std::nullopt
                                  : std::optional<Degree>(DegreeField(v));
    } else if (key == "seed") {
      cfg.seed = v.get<std::uint64_t>();
    } else if (key == "hybrid_mode") {
      const std::string m = v.get<std::string>();
      if (m != "literal" && m != "core") {
        throw Error(ErrorKind::kConfig, "unknown hybrid mode '" + m + "'");
      }
      cfg.hybrid_mode = m == "core" ? HybridMode::kCore : HybridMode::kLiteral;
    } else if (key == "budget") {
      if (v.contains("depth")) cfg.budget.max_depth = v["depth"].get<std::size_t>();
      if (v.contains("clauses")) {
        cfg.budget.max_clauses = v["clauses"].get<std::size_t>();
      }
      if (v.contains("time_ms")) {
        cfg.budget.max_time = std::chrono::milliseconds(v["time_ms"].get<long>());
      }
    } else {
      throw Error(ErrorKind::kConfig, "unknown config field '" + key + "'");
    }
  }
  cfg.Validate();
  cfg.budget.Validate();
  return cfg;
}

// }}}

namespace {

Response Fail(const Error& e, json extra = json::object()) {
  json err = {{"category", ErrorKindName(e.kind())}, {"message", e.what()}};
  if (const auto* p = dynamic_cast<const ParseError*>(&e)) {
    err["position"] = p->position();
  }
  extra["error"] = err;
  return {StatusFor(e.kind()), extra};
}

Response Guard(const std::function<Response()>& fn) {
  try {
    return fn();
  } catch (const TracedError& e) {
    return Fail(e, {{"partial_trace", ToJson(e.trace())}});
  } catch (const Error& e) {
    return Fail(e);
  } catch (const json::exception& e) {
    return {400, {{"error", {{"category", "RequestError"}, {"message", e.what()}}}}};
  }
}

json SessionView(const Session& s, Prover& prover) {
  return {{"id", s.id()},
          {"version", s.version()},
          {"placement", ToString(s.placement())},
          {"config", ToJson(s.config())},
          {"ranking", ToJson(s.current())},
          {"consistent",
           prover.IsConsistent(s.current().Formulas()) != Verdict::kInconsistent}};
}

// Budget warnings mean some conflict could not be settled; the result is
// reported but not committed.
std::optional<Response> Unsettled(const ExtractionTrace& t) {
  std::vector<std::string> w = t.Warnings();
  if (w.empty()) return std::nullopt;
  return Fail(Error(ErrorKind::kBudgetExceeded, w.front()),
              {{"partial_trace", ToJson(t)}});
}

}  // namespace

std::shared_ptr<Api::Slot> Api::Find(const std::string& id) {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) {
    throw Error(ErrorKind::kNotFound, "no session '" + id + "'");
  }
  return it->second;
}

Response Api::CreateSession(const json& body) {
  return Guard([&] {
    Ranking r;
    if (body.contains("example")) {
      r = FindExample(body["example"].get<std::string>()).initial;
    } else if (body.contains("ranking")) {
      r = RankingFromJson(body["ranking"]);
    }
    StrategyConfig cfg = ConfigFromJson(body.value("config", json()));
    Placement placement =
        ParsePlacement(body.value("placement", std::string("bottom")));
    std::shared_ptr<Slot> slot;
    {
      std::lock_guard lock(mu_);
      std::string id = "s" + std::to_string(next_id_++);
      slot = std::make_shared<Slot>(Session(id, r, cfg, placement));
      sessions_[id] = slot;
    }
    Prover prover(cfg.budget);
    return Response{201, SessionView(slot->session, prover)};
  });
}

Response Api::GetSession(const std::string& id) {
  return Guard([&] {
    auto slot = Find(id);
    std::lock_guard lock(slot->mu);
    Prover prover(slot->session.config().budget);
    return Response{200, SessionView(slot->session, prover)};
  });
}

Response Api::RunRevision(const std::string& id, const json& body,
                          bool commit) {
  return Guard([&] {
    auto slot = Find(id);
    std::lock_guard lock(slot->mu);
    Session& s = slot->session;
    if (commit && body.contains("base_version") &&
        body["base_version"].get<std::size_t>() != s.version()) {
      throw Error(ErrorKind::kStaleOutcome,
                  "base_version " + body["base_version"].dump() +
                      " is not the current version " +
                      std::to_string(s.version()));
    }
    Formula a = ParseField(body, "formula");
    std::optional<Degree> d;
    if (body.contains("degree") && !body["degree"].is_null()) {
      d = DegreeField(body["degree"]);
    }
    StrategyConfig cfg = ConfigFromJson(body.value("config", json()), s.config());
    Prover prover(cfg.budget);
    RevisionOutcome out = s.WhatIf(a, d, cfg, prover);
    if (auto r = Unsettled(out.trace)) return *r;
    if (commit) s.Commit(out);
    json j = ToJson(out);
    j["version"] = s.version();
    j["committed"] = commit;
    return Response{200, j};
  });
}

Response Api::Revise(const std::string& id, const json& body) {
  return RunRevision(id, body, true);
}

Response Api::WhatIf(const std::string& id, const json& body) {
  return RunRevision(id, body, false);
}

Response Api::Extract(const std::string& id, const json& body) {
  return Guard([&] {
    auto slot = Find(id);
    std::lock_guard lock(slot->mu);
    Session& s = slot->session;
    StrategyConfig cfg = ConfigFromJson(body.value("config", json()), s.config());
    Prover prover(cfg.budget);
    if (auto r = Unsettled(ContractExtract(s.current(), cfg, prover).trace)) {
      return *r;
    }
    ExtractionResult x = s.Extract(cfg, prover);
    json j = SessionView(s, prover);
    j["removed"] = Beliefs(x.removed);
    j["trace"] = ToJson(x.trace);
    return Response{200, j};
  });
}

Response Api::Integrate(const std::string& id, const json& body) {
  return Guard([&] {
    auto slot = Find(id);
    std::lock_guard lock(slot->mu);
    Session& s = slot->session;
    std::vector<Ranking> others;
    for (const json& r : body.at("rankings")) others.push_back(RankingFromJson(r));
    StrategyConfig cfg = ConfigFromJson(body.value("config", json()), s.config());
    Prover prover(cfg.budget);
    std::vector<Ranking> all{s.current()};
    all.insert(all.end(), others.begin(), others.end());
    if (auto r = Unsettled(saten::Integrate(all, cfg, prover).trace)) return *r;
    ExtractionResult x = s.Integrate(others, cfg, prover);
    json j = SessionView(s, prover);
    j["removed"] = Beliefs(x.removed);
    j["trace"] = ToJson(x.trace);
    return Response{200, j};
  });
}

Response Api::DegreeQuery(const std::string& id, const std::string& wff) {
  return Guard([&] {
    auto slot = Find(id);
    std::lock_guard lock(slot->mu);
    Formula f = Parse(wff);
    Prover prover(slot->session.config().budget);
    Degree d = DegreeOf(slot->session.current(), f, prover);
    return Response{200, {{"wff", Print(f)}, {"degree", d.ToString()}}};
  });
}

Response Api::Trace(const std::string& id) {
  return Guard([&] {
    auto slot = Find(id);
    std::lock_guard lock(slot->mu);
    const ExtractionTrace* t = slot->session.last_trace();
    return Response{200, {{"version", slot->session.version()},
                          {"trace", t ? ToJson(*t) : json(nullptr)}}};
  });
}

Response Api::Undo(const std::string& id) {
  return Guard([&] {
    auto slot = Find(id);
    std::lock_guard lock(slot->mu);
    Prover prover(slot->session.config().budget);
    if (!slot->session.Undo(prover)) {
      throw Error(ErrorKind::kStaleOutcome, "nothing to undo");
    }
    return Response{200, SessionView(slot->session, prover)};
  });
}

Response Api::ListExamples() {
  return Guard([] {
    json out = json::array();
    for (const ExampleEntry& e : Examples()) out.push_back(ToJson(e));
    return Response{200, {{"examples", out}}};
  });
}

// {{{ HTTP

namespace {

using Handler = std::function<Response(const std::string&, const json&)>;

json Body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  return json::parse(req.body);
}

void Send(httplib::Response& res, const Response& r) {
  res.status = r.status;
  res.set_content(r.body.dump(), "application/json");
}

httplib::Server::Handler Wrap(const Handler& h) {
  return [h](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches.size() > 1 ? req.matches[1].str() : "";
    json body;
    try {
      body = Body(req);
    } catch (const json::exception& e) {
      Send(res, {400, {{"error", {{"category", "RequestError"},
                                  {"message", e.what()}}}}});
      return;
    }
    Send(res, h(id, body));
  };
}

}  // namespace

void Mount(httplib::Server& server, Api& api) {
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  server.Post("/sessions", Wrap([&api](const std::string&, const json& b) {
                return api.CreateSession(b);
              }));
  server.Get(R"(/sessions/([^/]+))",
             Wrap([&api](const std::string& id, const json&) {
               return api.GetSession(id);
             }));
  server.Post(R"(/sessions/([^/]+)/revise)",
              Wrap([&api](const std::string& id, const json& b) {
                return api.Revise(id, b);
              }));
  server.Post(R"(/sessions/([^/]+)/whatif)",
              Wrap([&api](const std::string& id, const json& b) {
                return api.WhatIf(id, b);
              }));
  server.Post(R"(/sessions/([^/]+)/extract)",
              Wrap([&api](const std::string& id, const json& b) {
                return api.Extract(id, b);
              }));
  server.Post(R"(/sessions/([^/]+)/integrate)",
              Wrap([&api](const std::string& id, const json& b) {
                return api.Integrate(id, b);
              }));
  server.Post(R"(/sessions/([^/]+)/undo)",
              Wrap([&api](const std::string& id, const json&) {
                return api.Undo(id);
              }));
  server.Get(R"(/sessions/([^/]+)/trace)",
             Wrap([&api](const std::string& id, const json&) {
               return api.Trace(id);
             }));
  server.Get(R"(/sessions/([^/]+)/degree)",
             [&api](const httplib::Request& req, httplib::Response& res) {
               Send(res, api.DegreeQuery(req.matches[1].str(),
                                         req.get_param_value("wff")));
             });
  server.Get("/examples", Wrap([&api](const std::string&, const json&) {
               return api.ListExamples();
             }));
}

// }}}

}  // namespace saten::service
