#ifndef SATEN_PROVER_H_
#define SATEN_PROVER_H_

#include <chrono>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "saten/clause.h"
#include "saten/formula.h"

namespace saten {

struct ProofBudget {
  std::size_t max_depth = 12;
  std::size_t max_clauses = 50000;
  std::chrono::milliseconds max_time{5000};

  // Throws DomainError unless every limit is strictly positive.
  void Validate() const;
};

enum class Verdict { kConsistent, kInconsistent, kUnknown };
enum class Answer { kYes, kNo, kUnknown };

std::string_view ToString(Verdict v);
std::string_view ToString(Answer a);

// A refutation, listed so that every step follows from earlier ones.
struct Refutation {
  struct Step {
    enum class Rule { kInput, kInstance, kResolve, kFactor };
    Rule rule = Rule::kInput;
    Clause clause;
    int left = -1;   // first parent (instance/factor: the only parent)
    int right = -1;  // second parent of a resolvent
  };
  std::vector<Step> steps;

  // One line per step: "<n>: <clause>  [<rule> <parents>]".
  std::string ToText() const;
};

struct ProofResult {
  Verdict verdict = Verdict::kUnknown;
  std::optional<Refutation> refutation;
};

// kAuto enumerates subsets below ten candidates and runs MARCO above.
enum class MisMethod { kAuto, kEnumerate, kMarco };

struct MisResult {
  // Each entry lists candidate indices in increasing order; entries appear
  // in order of increasing size, then lexicographically.
  std::vector<std::vector<std::size_t>> subsets;
  // False when some consistency test ran out of budget and was read as
  // "consistent"; the list may then miss subsets.
  bool complete = true;
};

// Bounded first-order prover. Ground clause sets, and function-free clause
// sets whose Herbrand instantiation fits the clause budget, are decided
// exactly by DPLL; everything else goes to resolution with factoring under
// iterative deepening on proof depth.
//
// A Prover caches clausal forms and verdicts, so it is not thread-safe; use
// one per thread.
class Prover {
 public:
  explicit Prover(ProofBudget budget = {});
  ~Prover();
  Prover(const Prover&) = delete;
  Prover& operator=(const Prover&) = delete;

  const ProofBudget& budget() const { return budget_; }

  Verdict IsConsistent(std::span<const Formula> fs);
  // Like IsConsistent, but reports the refutation when one is found.
  ProofResult Refute(std::span<const Formula> fs);

  Answer Entails(std::span<const Formula> fs, const Formula& goal);
  Answer IsTautology(const Formula& f);
  // Whether `a` alone entails `b`.
  Answer SubsumedBy(const Formula& b, const Formula& a);

  // Forward chaining over Horn clauses, linear in total clause size once
  // ground. Throws NotHorn when some clause of fs is not Horn or the goal is
  // not a ground atom. Sets with function symbols are searched by SLD
  // resolution up to the depth budget.
  Answer EntailsHorn(std::span<const Formula> fs, const Formula& goal);

  // Subset-minimal S of candidates with S ∪ context inconsistent. The
  // context is assumed consistent on its own.
  MisResult MinimalInconsistentSubsets(std::span<const Formula> candidates,
                                       std::span<const Formula> context,
                                       MisMethod method = MisMethod::kAuto);

  // Clausal form this prover uses for f (skolem symbols unique to f).
  const std::vector<Clause>& ClausesOf(const Formula& f);

  // Number of queries answered kUnknown so far.
  std::size_t unknown_count() const { return unknown_count_; }

 private:
  struct Compiled;

  const Compiled& Compile(const Formula& f);
  ProofResult Decide(const std::vector<const Compiled*>& parts,
                     bool want_proof);
  Verdict CachedConsistency(const std::vector<const Compiled*>& parts);
  int AtomId(const Atom& a);

  MisResult BruteForceMis(std::span<const Formula> candidates,
                          std::span<const Formula> context);
  MisResult MarcoMis(std::span<const Formula> candidates,
                     std::span<const Formula> context);

  ProofBudget budget_;
  SymbolSupply symbols_;
  std::unordered_map<Formula, std::unique_ptr<Compiled>, FormulaHash> compiled_;
  std::map<Atom, int> atom_ids_;
  std::vector<Atom> atoms_;
  std::map<std::vector<int>, Verdict> verdicts_;
  std::size_t unknown_count_ = 0;
};

}  // namespace saten

#endif  // SATEN_PROVER_H_
