#include <CLI11.hpp>
#include <httplib.h>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <unistd.h>

#include "saten/engine.h"
#include "saten/error.h"
#include "saten/examples.h"
#include "saten/ranking_io.h"
#include "service.h"

namespace saten {
namespace {

enum Exit { kOk = 0, kUsage = 1, kParse = 2, kLogic = 3, kBudget = 4 };

int ExitFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kSyntax:
    case ErrorKind::kReservedName:
    case ErrorKind::kCase:
    case ErrorKind::kWhitespace:
    case ErrorKind::kFreeVariable:
    case ErrorKind::kFileParse:
    case ErrorKind::kDomain:
    case ErrorKind::kDuplicateBelief: return kParse;
    case ErrorKind::kConfig:
    case ErrorKind::kNotFound: return kUsage;
    case ErrorKind::kBudgetExceeded:
    case ErrorKind::kProverUnknown: return kBudget;
    default: return kLogic;
  }
}

void Report(const Error& e) {
  std::cerr << "error: " << ErrorKindName(e.kind()) << ": " << e.what() << '\n';
}

struct Options {
  std::string strategy = "maxi";
  bool subsumption = false;
  bool recovery = false;
  std::string half_life;
  std::string placement = "bottom";
  std::uint64_t seed = 0;
  bool trace = false;
  std::string format = "degrees";
  std::size_t budget_depth = ProofBudget{}.max_depth;
  std::size_t budget_clauses = ProofBudget{}.max_clauses;
  long budget_time = ProofBudget{}.max_time.count();
  std::string in;
  std::string out;
  bool trim = false;

  StrategyConfig Config() const {
    StrategyConfig cfg;
    cfg.strategy = ParseStrategy(strategy);
    cfg.subsumption_removal = subsumption;
    cfg.recovery = recovery;
    if (!half_life.empty()) cfg.half_life = Degree::Parse(half_life);
    cfg.seed = seed;
    cfg.budget = {budget_depth, budget_clauses,
                  std::chrono::milliseconds(budget_time)};
    cfg.Validate();
    cfg.budget.Validate();
    return cfg;
  }
  ParseOptions Parsing() const { return {.trim = trim}; }
  Formula Wff(const std::string& text) const { return Parse(text, Parsing()); }
  RankingFormat Format() const { return ParseRankingFormat(format); }

  Ranking Input() const {
    if (in.empty()) throw Error(ErrorKind::kConfig, "--in <file> is required");
    return LoadRanking(in, Parsing());
  }

  // Writes to --out when given, otherwise prints.
  void Emit(const Ranking& r) const {
    if (out.empty()) {
      std::cout << FormatRanking(r, Format());
    } else {
      SaveRanking(r, out, Format());
    }
  }
};

void PrintRemoved(const std::vector<Belief>& removed) {
  for (const Belief& b : removed) {
    std::cout << "removed\t" << b.degree << '\t' << Print(b.formula) << '\n';
  }
}

std::string Braces(const std::vector<std::string>& beliefs) {
  std::string s = "{";
  for (std::size_t i = 0; i < beliefs.size(); ++i) {
    if (i) s += ", ";
    s += beliefs[i];
  }
  return s + "}";
}

// {{{ examples

void ListExamples() {
  for (const ExampleEntry& e : Examples()) {
    std::cout << e.name << '\t' << ToString(e.category) << '\t'
              << e.description << '\n';
  }
}

int RunExampleTable(const std::string& name, const Options& o) {
  const ExampleEntry& e = FindExample(name);
  StrategyConfig cfg = o.Config();
  Prover prover(cfg.budget);
  std::cout << "# " << e.name << ": " << e.description << '\n'
            << FormatRanking(e.initial, o.Format());
  for (const ScriptedRevision& s : e.script) {
    std::cout << "# revise by " << Print(s.formula) << " at " << s.degree
              << '\n';
  }
  std::set<std::vector<std::string>> distinct;
  bool all_match = true;
  for (Strategy s : kAllStrategies) {
    ExampleRun run = RunExample(e, s, cfg, prover);
    distinct.insert(run.beliefs);
    all_match = all_match && run.matches_expected;
    std::cout << ToString(s) << '\t' << Braces(run.beliefs)
              << (run.matches_expected ? "" : "\t(differs from expected)")
              << '\n';
    if (o.trace) {
      for (const RevisionOutcome& step : run.steps) {
        std::cout << step.trace.ToText();
      }
    }
  }
  std::cout << distinct.size() << " distinct results\n";
  return all_match ? kOk : kLogic;
}

// }}}

// {{{ repl

const char* kReplHelp =
    "commands:\n"
    "  show                      print the current ranking\n"
    "  add <wff> <degree>        insert a belief and restart the session\n"
    "  load <file> | save <file>\n"
    "  example <name>            start from a bundled example\n"
    "  revise <wff> [degree]     revise and commit\n"
    "  whatif <wff> [degree]     revise without committing\n"
    "  extract                   theory extraction on the current ranking\n"
    "  degree <wff>              entrenchment degree\n"
    "  reason <a> <b>            is a a reason for b?\n"
    "  undo | trace | history\n"
    "  strategy <name> | placement <top|bottom> | format <degrees|ordinal>\n"
    "  quit\n";

class Repl {
 public:
  explicit Repl(Options o)
      : o_(std::move(o)),
        session_("repl", o_.in.empty() ? Ranking{} : o_.Input(), o_.Config(),
                 ParsePlacement(o_.placement)) {}

  int Run(std::istream& in) {
    std::string line;
    while (prompt(), std::getline(in, line)) {
      std::istringstream words(line);
      std::string cmd;
      if (!(words >> cmd) || cmd[0] == '#') continue;
      if (cmd == "quit" || cmd == "exit") break;
      std::vector<std::string> args;
      for (std::string w; words >> w;) args.push_back(w);
      try {
        Dispatch(cmd, args);
      } catch (const Error& e) {
        Report(e);
      }
    }
    return kOk;
  }

 private:
  void prompt() const {
    if (interactive_) std::cout << "saten> " << std::flush;
  }

  void Need(const std::vector<std::string>& args, std::size_t lo,
            std::size_t hi) const {
    if (args.size() < lo || args.size() > hi) {
      throw Error(ErrorKind::kConfig, "wrong number of arguments; try help");
    }
  }

  std::optional<Degree> OptDegree(const std::vector<std::string>& args) const {
    if (args.size() < 2) return std::nullopt;
    return Degree::Parse(args[1]);
  }

  void Restart(Ranking r) {
    session_ = Session("repl", std::move(r), session_.config(),
                       session_.placement());
  }

  void Dispatch(const std::string& cmd, const std::vector<std::string>& args) {
    Prover prover(session_.config().budget);
    if (cmd == "help") {
      std::cout << kReplHelp;
    } else if (cmd == "show") {
      std::cout << FormatRanking(session_.current(), o_.Format());
    } else if (cmd == "add") {
      Need(args, 2, 2);
      Ranking r = session_.current();
      r.Insert(o_.Wff(args[0]), Degree::Parse(args[1]));
      Restart(std::move(r));
    } else if (cmd == "load") {
      Need(args, 1, 1);
      Restart(LoadRanking(args[0], o_.Parsing()));
    } else if (cmd == "save") {
      Need(args, 1, 1);
      SaveRanking(session_.current(), args[0], o_.Format());
    } else if (cmd == "example") {
      Need(args, 1, 1);
      Restart(FindExample(args[0]).initial);
    } else if (cmd == "revise" || cmd == "whatif") {
      Need(args, 1, 2);
      RevisionOutcome out =
          session_.WhatIf(o_.Wff(args[0]), OptDegree(args), prover);
      if (cmd == "revise") session_.Commit(out);
      PrintRemoved(out.removed);
      std::cout << FormatRanking(out.after, o_.Format());
      if (o_.trace) std::cout << out.trace.ToText();
    } else if (cmd == "extract") {
      Need(args, 0, 0);
      ExtractionResult x = session_.Extract(prover);
      PrintRemoved(x.removed);
      if (o_.trace) std::cout << x.trace.ToText();
    } else if (cmd == "degree") {
      Need(args, 1, 1);
      std::cout << DegreeOf(session_.current(), o_.Wff(args[0]), prover)
                << '\n';
    } else if (cmd == "reason") {
      Need(args, 2, 2);
      std::cout << ToString(IsReasonFor(session_.current(), o_.Wff(args[0]),
                                        o_.Wff(args[1]), session_.config(),
                                        session_.placement(), prover))
                << '\n';
    } else if (cmd == "undo") {
      std::cout << (session_.Undo(prover) ? "undone" : "nothing to undo")
                << '\n';
    } else if (cmd == "trace") {
      const ExtractionTrace* t = session_.last_trace();
      std::cout << (t ? t->ToText() : "no trace yet\n");
    } else if (cmd == "history") {
      std::cout << session_.version() << " committed operations\n";
    } else if (cmd == "strategy") {
      Need(args, 1, 1);
      StrategyConfig cfg = session_.config();
      cfg.strategy = ParseStrategy(args[0]);
      session_.set_config(cfg);
    } else if (cmd == "placement") {
      Need(args, 1, 1);
      session_.set_placement(ParsePlacement(args[0]));
    } else if (cmd == "format") {
      Need(args, 1, 1);
      ParseRankingFormat(args[0]);
      o_.format = args[0];
    } else {
      throw Error(ErrorKind::kConfig, "unknown command '" + cmd + "'");
    }
  }

  Options o_;
  Session session_;
  bool interactive_ = isatty(0) != 0;
};

// }}}

int Main(int argc, char** argv) {
  CLI::App app{"saten: belief revision and theory extraction"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;

  app.add_option("--strategy", o.strategy,
                 "standard|maxi|hybrid|global|linear|quick")
      ->capture_default_str();
  app.add_flag("--subsumption", o.subsumption, "subsumption removal");
  app.add_flag("--recovery", o.recovery, "restore b|a for removed b");
  app.add_option("--half-life", o.half_life, "decay factor in (0,1)");
  app.add_option("--placement", o.placement, "top|bottom")
      ->capture_default_str();
  app.add_option("--seed", o.seed, "seed for quick adjustment")
      ->capture_default_str();
  app.add_flag("--trace", o.trace, "print the extraction trace");
  app.add_option("--format", o.format, "degrees|ordinal")->capture_default_str();
  app.add_option("--budget-depth", o.budget_depth)->capture_default_str();
  app.add_option("--budget-clauses", o.budget_clauses)->capture_default_str();
  app.add_option("--budget-time", o.budget_time, "milliseconds")
      ->capture_default_str();
  app.add_option("--in", o.in, "ranking file");
  app.add_option("--out", o.out, "write the resulting ranking here");
  app.add_flag("--trim", o.trim, "strip whitespace from formulae");

  std::function<int()> action;

  std::string wff, wff2, degree;
  auto* parse = app.add_subcommand("parse", "print the canonical form");
  parse->add_option("wff", wff)->required();
  parse->callback([&] {
    action = [&] {
      std::cout << Print(o.Wff(wff)) << '\n';
      return kOk;
    };
  });

  auto* deg = app.add_subcommand("degree", "degree of a formula in --in");
  deg->add_option("wff", wff)->required();
  deg->callback([&] {
    action = [&] {
      Prover prover(o.Config().budget);
      std::cout << DegreeOf(o.Input(), o.Wff(wff), prover) << '\n';
      return kOk;
    };
  });

  auto* extract = app.add_subcommand("extract", "theory extraction on --in");
  extract->callback([&] {
    action = [&] {
      StrategyConfig cfg = o.Config();
      Prover prover(cfg.budget);
      ExtractionResult x = ContractExtract(o.Input(), cfg, prover);
      PrintRemoved(x.removed);
      if (cfg.half_life) x.ranking = Decay(x.ranking, *cfg.half_life);
      o.Emit(x.ranking);
      if (o.trace) std::cout << x.trace.ToText();
      return kOk;
    };
  });

  auto* revise = app.add_subcommand("revise", "revise --in by a formula");
  revise->add_option("wff", wff)->required();
  revise->add_option("degree", degree, "explicit degree in (0,1)");
  revise->callback([&] {
    action = [&] {
      StrategyConfig cfg = o.Config();
      Prover prover(cfg.budget);
      std::optional<Degree> d;
      if (!degree.empty()) d = Degree::Parse(degree);
      RevisionOutcome out = Revise(o.Input(), o.Wff(wff), d, cfg,
                                   ParsePlacement(o.placement), prover);
      PrintRemoved(out.removed);
      for (const Belief& b : out.recovered) {
        std::cout << "recovered\t" << b.degree << '\t' << Print(b.formula)
                  << '\n';
      }
      o.Emit(out.after);
      if (o.trace) std::cout << out.trace.ToText();
      return kOk;
    };
  });

  std::vector<std::string> files;
  auto* integrate = app.add_subcommand("integrate", "integrate ranking files");
  integrate->add_option("files", files)->required();
  integrate->callback([&] {
    action = [&] {
      StrategyConfig cfg = o.Config();
      Prover prover(cfg.budget);
      std::vector<Ranking> rs;
      if (!o.in.empty()) rs.push_back(o.Input());
      for (const std::string& f : files) {
        rs.push_back(LoadRanking(f, o.Parsing()));
      }
      ExtractionResult x = Integrate(rs, cfg, prover);
      PrintRemoved(x.removed);
      o.Emit(x.ranking);
      if (o.trace) std::cout << x.trace.ToText();
      return kOk;
    };
  });

  auto* reason = app.add_subcommand("reason", "is <a> a reason for <b>?");
  reason->add_option("a", wff)->required();
  reason->add_option("b", wff2)->required();
  reason->callback([&] {
    action = [&] {
      StrategyConfig cfg = o.Config();
      Prover prover(cfg.budget);
      Answer a = IsReasonFor(o.Input(), o.Wff(wff), o.Wff(wff2), cfg,
                             ParsePlacement(o.placement), prover);
      std::cout << ToString(a) << '\n';
      return a == Answer::kUnknown ? kBudget : kOk;
    };
  });

  auto* repl = app.add_subcommand("repl", "interactive session on stdin");
  repl->callback([&] {
    action = [&] { return Repl(o).Run(std::cin); };
  });

  std::string example;
  auto* examples = app.add_subcommand("examples", "bundled examples");
  examples->require_subcommand(1);
  examples->add_subcommand("list", "list the examples")->callback([&] {
    action = [&] {
      ListExamples();
      return kOk;
    };
  });
  auto* run = examples->add_subcommand("run", "run under every strategy");
  run->add_option("name", example)->required();
  run->callback([&] {
    action = [&] { return RunExampleTable(example, o); };
  });

  std::string host = "127.0.0.1";
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "HTTP JSON service");
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--port", port)->capture_default_str();
  serve->callback([&] {
    action = [&] {
      service::Api api;
      httplib::Server server;
      service::Mount(server, api);
      std::cout << "listening on " << host << ':' << port << std::endl;
      if (!server.listen(host, port)) {
        std::cerr << "error: ConfigError: cannot listen on " << host << ':'
                  << port << '\n';
        return kUsage;
      }
      return kOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    return action ? action() : kUsage;
  } catch (const Error& e) {
    Report(e);
    return ExitFor(e.kind());
  }
}

}  // namespace
}  // namespace saten

int main(int argc, char** argv) { return saten::Main(argc, argv); }
