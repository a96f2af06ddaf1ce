#ifndef SATEN_STRATEGIES_H_
#define SATEN_STRATEGIES_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "saten/degree.h"
#include "saten/entrenchment.h"
#include "saten/error.h"
#include "saten/formula.h"
#include "saten/prover.h"

namespace saten {

enum class Strategy { kStandard, kMaxi, kHybrid, kGlobal, kLinear, kQuick };

inline constexpr std::array<Strategy, 6> kAllStrategies = {
    Strategy::kStandard, Strategy::kMaxi,   Strategy::kHybrid,
    Strategy::kGlobal,   Strategy::kLinear, Strategy::kQuick};

std::string_view ToString(Strategy s);
// Lower-case names as printed by ToString. Throws ConfigError.
Strategy ParseStrategy(std::string_view name);

// How hybrid adjustment computes the beliefs it gives up before its
// maxi-adjustment phase.
enum class HybridMode {
  // When revising by a with -a in the base: drop -a and every b for which
  // -a|b (or b|-a, or a->b) sits at the rank of -a.
  kLiteral,
  // Drop everything below the largest cut consistent with the input. This
  // phase keeps exactly the ranks maxi-adjustment would keep untouched, so
  // the result always equals maxi-adjustment.
  kCore,
};

struct StrategyConfig {
  Strategy strategy = Strategy::kMaxi;
  bool subsumption_removal = false;
  bool recovery = false;
  std::optional<Degree> half_life;
  std::uint64_t seed = 0;
  HybridMode hybrid_mode = HybridMode::kLiteral;
  ProofBudget budget;

  // ConfigError for subsumption removal under standard adjustment;
  // DomainError for a half-life outside (0,1) or a bad budget.
  void Validate() const;
};

struct ProtectedBelief {
  Formula formula;
  Degree degree;
};

// What one extraction decided at one rank.
struct RankRecord {
  Degree threshold;
  std::vector<Formula> candidates;
  // Minimal inconsistent subsets (maxi, hybrid, global), the inconsistent
  // prefixes scanned (quick), or the whole rank (linear, standard).
  std::vector<std::vector<Formula>> conflicts;
  std::vector<Formula> subsumed;
  std::vector<Formula> removed;
  std::vector<Formula> kept;
  std::vector<Formula> regathered;
  std::vector<std::string> warnings;
};

struct ExtractionTrace {
  Strategy strategy = Strategy::kMaxi;
  std::optional<Formula> protected_formula;
  std::vector<std::string> notes;
  std::vector<RankRecord> ranks;

  std::vector<std::string> Warnings() const;
  std::string ToText() const;
};

// A budget failure that struck after extraction, carrying the trace so far.
class TracedError : public Error {
 public:
  TracedError(const Error& cause, ExtractionTrace trace)
      : Error(cause.kind(), cause.what()), trace_(std::move(trace)) {}

  const ExtractionTrace& trace() const { return trace_; }

 private:
  ExtractionTrace trace_;
};

struct ExtractionResult {
  Ranking ranking;
  // Removed beliefs at their input degrees, in input order.
  std::vector<Belief> removed;
  ExtractionTrace trace;
};

// Theory extraction under cfg.strategy. When `protected_belief` is present
// it is retained at its degree, replacing any entry for the same formula.
// Consistency tests the prover cannot settle count as consistent and leave a
// warning in the trace. Throws ProtectedInconsistent when the protected
// formula is contradictory.
ExtractionResult Extract(const Ranking& r,
                         const std::optional<ProtectedBelief>& protected_belief,
                         const StrategyConfig& cfg, Prover& prover);

ExtractionResult ExtractStandard(const Ranking& r,
                                 const std::optional<ProtectedBelief>& p,
                                 const StrategyConfig& cfg, Prover& prover);
ExtractionResult ExtractMaxi(const Ranking& r,
                             const std::optional<ProtectedBelief>& p,
                             const StrategyConfig& cfg, Prover& prover);
ExtractionResult ExtractHybrid(const Ranking& r,
                               const std::optional<ProtectedBelief>& p,
                               const StrategyConfig& cfg, Prover& prover);
ExtractionResult ExtractGlobal(const Ranking& r,
                               const std::optional<ProtectedBelief>& p,
                               const StrategyConfig& cfg, Prover& prover);
ExtractionResult ExtractLinear(const Ranking& r,
                               const std::optional<ProtectedBelief>& p,
                               const StrategyConfig& cfg, Prover& prover);
ExtractionResult ExtractQuick(const Ranking& r,
                              const std::optional<ProtectedBelief>& p,
                              const StrategyConfig& cfg, Prover& prover);

struct SubsumptionSplit {
  std::vector<Formula> removed_first;
  std::vector<Formula> remaining;
};

// Splits removal candidates into those the incoming belief entails and the
// rest, preserving order. ConfigError under standard adjustment.
SubsumptionSplit ApplySubsumptionRemoval(std::span<const Formula> candidates,
                                         const Formula& incoming,
                                         const StrategyConfig& cfg,
                                         Prover& prover);

// Each removed b becomes b|incoming at b's degree, unless that disjunction
// is a tautology.
std::vector<Belief> ApplyRecovery(std::span<const Belief> removed,
                                  const Formula& incoming, Prover& prover);

}  // namespace saten

#endif  // SATEN_STRATEGIES_H_
