#include "saten/examples.h"

#include <algorithm>

#include "saten/error.h"
#include "saten/ranking_io.h"

namespace saten {

std::string_view ToString(ExampleCategory c) {
  switch (c) {
    case ExampleCategory::kPropositional: return "propositional";
    case ExampleCategory::kPredicate: return "predicate";
    case ExampleCategory::kStrategyContrast: return "contrast";
  }
  return "propositional";
}

namespace {

struct Source {
  const char* name;
  ExampleCategory category;
  const char* description;
  const char* ranking;
  std::vector<std::pair<const char*, const char*>> script;
  std::map<Strategy, std::vector<std::string>> expected;
};

std::map<Strategy, std::vector<std::string>> Same(
    const std::vector<std::string>& beliefs) {
  std::map<Strategy, std::vector<std::string>> out;
  for (Strategy s : kAllStrategies) out[s] = beliefs;
  return out;
}

std::vector<Source> Sources() {
  using S = Strategy;
  return {
      {"chain",
       ExampleCategory::kPropositional,
       "A derived belief is given up when its conclusion is denied.",
       "0.9\ta\n0.7\ta->b\n0.7\tc\n",
       {{"-b", "0.8"}},
       {{S::kStandard, {"-b", "a"}},
        {S::kMaxi, {"-b", "a", "c"}},
        {S::kHybrid, {"-b", "a", "c"}},
        {S::kGlobal, {"-b", "a", "c"}},
        {S::kLinear, {"-b", "a"}},
        {S::kQuick, {"-b", "a", "c"}}}},
      {"birds",
       ExampleCategory::kPropositional,
       "Tweety without quantifiers: learning that it is a penguin.",
       "0.9\tpenguin->-flies\n0.8\tbird\n0.6\tbird->flies\n",
       {{"penguin", "0.7"}},
       Same({"bird", "penguin", "penguin->-flies"})},
      {"drift",
       ExampleCategory::kPropositional,
       "Two revisions in a row; the second undoes part of the first.",
       "0.8\tp->q\n0.6\tq->r\n0.4\tp\n",
       {{"-r", "0.5"}, {"r", "0.7"}},
       Same({"p->q", "q->r", "r"})},
      {"tweety",
       ExampleCategory::kPredicate,
       "Tweety is a bird, birds fly, penguins do not; Tweety is a penguin.",
       "0.8\tBird(tweety)\n0.6\t*X(Bird(X)->Flies(X))\n"
       "0.9\t*X(Penguin(X)->-Flies(X))\n",
       {{"Penguin(tweety)", "0.7"}},
       Same({"*X(Penguin(X)->-Flies(X))", "Bird(tweety)", "Penguin(tweety)"})},
      {"grandmother",
       ExampleCategory::kPredicate,
       "Everyone has a mother; a daughter of Ben's maternal grandmother is "
       "his mother or his aunt.",
       "0.8\t*X(!Y(M(X,Y)))&*Y(D(mgm(ben),Y)->M(ben,Y)|A(ben,Y))\n"
       "0.6\tD(mgm(ben),sue)\n0.5\t-A(ben,sue)\n",
       {{"-M(ben,sue)", "0.7"}},
       Same({"*X(!Y(M(X,Y)))&*Y(D(mgm(ben),Y)->M(ben,Y)|A(ben,Y))",
             "-M(ben,sue)", "D(mgm(ben),sue)"})},
      {"contrast",
       ExampleCategory::kStrategyContrast,
       "Nine beliefs on four ranks on which all six strategies disagree.",
       "0.8\t-a\n0.8\t-a|d\n0.6\t-b|-a\n0.6\ta->b\n0.4\td->-c\n"
       "0.4\tc->-d\n0.4\tb->-a\n0.2\td\n0.2\t-b|a\n",
       {{"a", "0.5"}},
       {{S::kStandard, {"a"}},
        {S::kMaxi, {"-a|d", "-b|a", "a", "b->-a", "c->-d", "d", "d->-c"}},
        {S::kHybrid, {"-a|d", "-b|a", "a", "b->-a", "c->-d", "d->-c"}},
        {S::kGlobal, {"-a|d", "-b|a", "a", "c->-d", "d", "d->-c"}},
        {S::kLinear, {"-b|a", "a", "b->-a", "c->-d", "d", "d->-c"}},
        {S::kQuick,
         {"-a|d", "-b|-a", "-b|a", "a", "b->-a", "c->-d", "d", "d->-c"}}}},
  };
}

std::vector<ExampleEntry> Build() {
  std::vector<ExampleEntry> out;
  for (const Source& s : Sources()) {
    ExampleEntry e;
    e.name = s.name;
    e.category = s.category;
    e.description = s.description;
    e.initial = ParseRanking(s.ranking);
    for (const auto& [wff, degree] : s.script) {
      e.script.push_back(ScriptedRevision{Parse(wff), Degree::Parse(degree)});
    }
    e.expected = s.expected;
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

const std::vector<ExampleEntry>& Examples() {
  static const std::vector<ExampleEntry> examples = Build();
  return examples;
}

const ExampleEntry& FindExample(std::string_view name) {
  for (const ExampleEntry& e : Examples()) {
    if (e.name == name) return e;
  }
  throw Error(ErrorKind::kNotFound, "no example named '" + std::string(name) + "'");
}

std::vector<std::string> BeliefSet(const Ranking& r) {
  std::vector<std::string> out;
  for (const Formula& f : r.Formulas()) out.push_back(Print(f));
  std::sort(out.begin(), out.end());
  return out;
}

ExampleRun RunExample(const ExampleEntry& e, Strategy strategy,
                      const StrategyConfig& cfg, Prover& prover) {
  StrategyConfig c = cfg;
  c.strategy = strategy;
  if (strategy == Strategy::kStandard) c.subsumption_removal = false;
  ExampleRun run;
  run.strategy = strategy;
  run.result = e.initial;
  for (const ScriptedRevision& step : e.script) {
    run.steps.push_back(Revise(run.result, step.formula, step.degree, c,
                               Placement::kBottom, prover));
    run.result = run.steps.back().after;
  }
  run.beliefs = BeliefSet(run.result);
  auto it = e.expected.find(strategy);
  if (it != e.expected.end()) run.matches_expected = it->second == run.beliefs;
  return run;
}

}  // namespace saten
