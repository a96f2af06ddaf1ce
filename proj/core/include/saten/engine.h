#ifndef SATEN_ENGINE_H_
#define SATEN_ENGINE_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "saten/degree.h"
#include "saten/entrenchment.h"
#include "saten/formula.h"
#include "saten/prover.h"
#include "saten/strategies.h"

namespace saten {

// Where a revision without an explicit degree puts the new belief.
enum class Placement { kTop, kBottom };

std::string_view ToString(Placement p);
// "top" or "bottom". Throws ConfigError.
Placement ParsePlacement(std::string_view name);

// Top: (1 + max)/2. Bottom: (floor + min)/2. Empty ranking: 1/2.
Degree PlacementDegree(const Ranking& r, Placement p,
                       const Degree& floor = DefaultEvaporationFloor());

struct RevisionOutcome {
  Ranking before;
  Ranking after;
  Belief incoming;
  std::vector<Belief> removed;
  // Weakened beliefs b|a put back by recovery, at the degrees of b.
  std::vector<Belief> recovered;
  ExtractionTrace trace;
  std::optional<Degree> decay_applied;
  // The normalized result before decay; equals `after` when no decay ran.
  Ranking normalized;
  StrategyConfig config;
};

// Insert a (replacing any entry for it), extract with a protected, recover,
// normalize, then decay. Throws ContradictoryInput if a is
// self-inconsistent; DomainError if d is outside (0,1).
RevisionOutcome Revise(const Ranking& r, const Formula& a,
                       const std::optional<Degree>& d,
                       const StrategyConfig& cfg, Placement placement,
                       Prover& prover);

// Theory extraction with nothing protected, then normalization.
ExtractionResult ContractExtract(const Ranking& r, const StrategyConfig& cfg,
                                 Prover& prover);

// Union with maximum degree for duplicates, then ContractExtract.
ExtractionResult Integrate(std::span<const Ranking> rs,
                           const StrategyConfig& cfg, Prover& prover);

// Yes iff b is more entrenched after hypothetically revising by a than after
// revising by -a. Unknown when a degree could not be settled within budget.
Answer IsReasonFor(const Ranking& r, const Formula& a, const Formula& b,
                   const StrategyConfig& cfg, Placement placement,
                   Prover& prover);

// One committed operation, kept so history can be replayed.
struct HistoryEntry {
  enum class Kind { kRevise, kExtract, kIntegrate };
  Kind kind = Kind::kRevise;
  std::optional<Belief> incoming;
  std::vector<Ranking> others;
  StrategyConfig config;
  Ranking before;
  Ranking after;
  std::vector<Belief> removed;
  ExtractionTrace trace;
};

// A revision session. Not synchronized; callers serialize access.
class Session {
 public:
  Session(std::string id, Ranking initial, StrategyConfig cfg = {},
          Placement placement = Placement::kBottom);

  const std::string& id() const { return id_; }
  const Ranking& initial() const { return initial_; }
  const Ranking& current() const { return current_; }
  const std::vector<HistoryEntry>& history() const { return history_; }
  std::size_t version() const { return history_.size(); }
  const StrategyConfig& config() const { return config_; }
  Placement placement() const { return placement_; }

  // Throws ConfigError or DomainError for an invalid configuration.
  void set_config(const StrategyConfig& cfg);
  void set_placement(Placement p) { placement_ = p; }

  // Revises the current ranking without committing.
  RevisionOutcome WhatIf(const Formula& a, const std::optional<Degree>& d,
                         Prover& prover) const;
  RevisionOutcome WhatIf(const Formula& a, const std::optional<Degree>& d,
                         const StrategyConfig& cfg, Prover& prover) const;

  // Throws StaleOutcome unless outcome.before equals the current ranking.
  void Commit(const RevisionOutcome& outcome);

  RevisionOutcome Revise(const Formula& a, const std::optional<Degree>& d,
                         Prover& prover);
  ExtractionResult Extract(Prover& prover);
  ExtractionResult Extract(const StrategyConfig& cfg, Prover& prover);
  ExtractionResult Integrate(std::span<const Ranking> others, Prover& prover);
  ExtractionResult Integrate(std::span<const Ranking> others,
                             const StrategyConfig& cfg, Prover& prover);

  // Drops the last operation and replays the rest. False if history is empty.
  bool Undo(Prover& prover);

  // Re-runs the history from the initial ranking.
  Ranking Replay(Prover& prover) const;

  const ExtractionTrace* last_trace() const {
    return history_.empty() ? nullptr : &history_.back().trace;
  }

 private:
  static Ranking Apply(const Ranking& r, const HistoryEntry& e,
                       Prover& prover);

  std::string id_;
  Ranking initial_;
  Ranking current_;
  std::vector<HistoryEntry> history_;
  StrategyConfig config_;
  Placement placement_;
};

}  // namespace saten

#endif  // SATEN_ENGINE_H_
