#ifndef SATEN_EXAMPLES_H_
#define SATEN_EXAMPLES_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "saten/engine.h"
#include "saten/entrenchment.h"
#include "saten/prover.h"
#include "saten/strategies.h"

namespace saten {

enum class ExampleCategory { kPropositional, kPredicate, kStrategyContrast };

std::string_view ToString(ExampleCategory c);

struct ScriptedRevision {
  Formula formula;
  Degree degree;
};

struct ExampleEntry {
  std::string name;
  ExampleCategory category = ExampleCategory::kPropositional;
  std::string description;
  Ranking initial;
  std::vector<ScriptedRevision> script;
  // Belief set left after the script, per strategy, in canonical print
  // order. Strategies without an entry are only required to run cleanly.
  std::map<Strategy, std::vector<std::string>> expected;
};

// The bundled example library.
const std::vector<ExampleEntry>& Examples();
// Throws NotFound.
const ExampleEntry& FindExample(std::string_view name);

struct ExampleRun {
  Strategy strategy = Strategy::kMaxi;
  std::vector<RevisionOutcome> steps;
  Ranking result;
  // Canonical prints of the result's formulae, sorted.
  std::vector<std::string> beliefs;
  // True when there is no expectation for this strategy.
  bool matches_expected = true;
};

// Runs the script from the initial ranking under `cfg` with its strategy
// replaced by `strategy`.
ExampleRun RunExample(const ExampleEntry& e, Strategy strategy,
                      const StrategyConfig& cfg, Prover& prover);

std::vector<std::string> BeliefSet(const Ranking& r);

}  // namespace saten

#endif  // SATEN_EXAMPLES_H_
