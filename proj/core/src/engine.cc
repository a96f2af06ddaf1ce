#include "saten/engine.h"

#include "saten/error.h"

namespace saten {

std::string_view ToString(Placement p) {
  return p == Placement::kTop ? "top" : "bottom";
}

Placement ParsePlacement(std::string_view name) {
  if (name == "top") return Placement::kTop;
  if (name == "bottom") return Placement::kBottom;
  throw Error(ErrorKind::kConfig, "unknown placement '" + std::string(name) +
                                      "' (expected top or bottom)");
}

Degree PlacementDegree(const Ranking& r, Placement p, const Degree& floor) {
  if (r.empty()) return Degree(1, 2);
  if (p == Placement::kTop) return (Degree::One() + *r.MaxDegree()) / 2;
  return (floor + *r.MinDegree()) / 2;
}

namespace {

Ranking NormalizeTraced(const Ranking& r, const ExtractionTrace& trace,
                        Prover& prover) {
  try {
    return Normalize(r, prover);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kProverUnknown &&
        e.kind() != ErrorKind::kBudgetExceeded) {
      throw;
    }
    throw TracedError(e, trace);
  }
}

}  // namespace

RevisionOutcome Revise(const Ranking& r, const Formula& a,
                       const std::optional<Degree>& d,
                       const StrategyConfig& cfg, Placement placement,
                       Prover& prover) {
  cfg.Validate();
  if (prover.IsConsistent(std::vector<Formula>{a}) == Verdict::kInconsistent) {
    throw Error(ErrorKind::kContradictoryInput,
                "cannot revise by the contradictory formula " + Print(a));
  }
  Ranking rest = r;
  rest.Erase(a);
  const Degree degree = d ? *d : PlacementDegree(rest, placement);
  if (!degree.IsOpenUnit()) {
    throw Error(ErrorKind::kDomain,
                "explicit degree " + degree.ToString() + " outside (0,1)");
  }

  ExtractionResult x = Extract(r, ProtectedBelief{a, degree}, cfg, prover);
  RevisionOutcome out{.before = r,
                      .after = {},
                      .incoming = Belief{a, degree},
                      .removed = std::move(x.removed),
                      .recovered = {},
                      .trace = std::move(x.trace),
                      .decay_applied = std::nullopt,
                      .normalized = {},
                      .config = cfg};
  Ranking merged = std::move(x.ranking);
  if (cfg.recovery) {
    out.recovered = ApplyRecovery(out.removed, a, prover);
    for (const Belief& b : out.recovered) merged.Merge(b.formula, b.degree);
    if (!out.recovered.empty()) {
      out.trace.notes.push_back("recovery restored " +
                                std::to_string(out.recovered.size()) +
                                " weakened beliefs");
    }
  }
  out.normalized = NormalizeTraced(merged, out.trace, prover);
  if (cfg.half_life) {
    out.after = Decay(out.normalized, *cfg.half_life);
    out.decay_applied = cfg.half_life;
  } else {
    out.after = out.normalized;
  }
  return out;
}

ExtractionResult ContractExtract(const Ranking& r, const StrategyConfig& cfg,
                                 Prover& prover) {
  ExtractionResult x = Extract(r, std::nullopt, cfg, prover);
  x.ranking = NormalizeTraced(x.ranking, x.trace, prover);
  return x;
}

ExtractionResult Integrate(std::span<const Ranking> rs,
                           const StrategyConfig& cfg, Prover& prover) {
  Ranking all;
  for (const Ranking& r : rs) {
    for (const Belief& b : r.beliefs()) all.Merge(b.formula, b.degree);
  }
  return ContractExtract(all, cfg, prover);
}

Answer IsReasonFor(const Ranking& r, const Formula& a, const Formula& b,
                   const StrategyConfig& cfg, Placement placement,
                   Prover& prover) {
  try {
    Degree with = DegreeOf(Revise(r, a, std::nullopt, cfg, placement, prover).after,
                           b, prover);
    Degree without =
        DegreeOf(Revise(r, Complement(a), std::nullopt, cfg, placement, prover)
                     .after,
                 b, prover);
    return with > without ? Answer::kYes : Answer::kNo;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kProverUnknown) return Answer::kUnknown;
    throw;
  }
}

// {{{ Session

Session::Session(std::string id, Ranking initial, StrategyConfig cfg,
                 Placement placement)
    : id_(std::move(id)),
      initial_(std::move(initial)),
      current_(initial_),
      config_(std::move(cfg)),
      placement_(placement) {
  config_.Validate();
}

void Session::set_config(const StrategyConfig& cfg) {
  cfg.Validate();
  config_ = cfg;
}

RevisionOutcome Session::WhatIf(const Formula& a,
                                const std::optional<Degree>& d,
                                Prover& prover) const {
  return WhatIf(a, d, config_, prover);
}

RevisionOutcome Session::WhatIf(const Formula& a,
                                const std::optional<Degree>& d,
                                const StrategyConfig& cfg,
                                Prover& prover) const {
  return saten::Revise(current_, a, d, cfg, placement_, prover);
}

void Session::Commit(const RevisionOutcome& outcome) {
  if (!(outcome.before == current_)) {
    throw Error(ErrorKind::kStaleOutcome,
                "outcome was computed against a ranking that is no longer "
                "current");
  }
  HistoryEntry e;
  e.kind = HistoryEntry::Kind::kRevise;
  e.incoming = outcome.incoming;
  e.config = outcome.config;
  e.before = current_;
  e.after = outcome.after;
  e.removed = outcome.removed;
  e.trace = outcome.trace;
  history_.push_back(std::move(e));
  current_ = outcome.after;
}

RevisionOutcome Session::Revise(const Formula& a,
                                const std::optional<Degree>& d,
                                Prover& prover) {
  RevisionOutcome out = WhatIf(a, d, prover);
  Commit(out);
  return out;
}

ExtractionResult Session::Extract(Prover& prover) {
  return Extract(config_, prover);
}

ExtractionResult Session::Extract(const StrategyConfig& cfg, Prover& prover) {
  ExtractionResult x = ContractExtract(current_, cfg, prover);
  if (cfg.half_life) x.ranking = Decay(x.ranking, *cfg.half_life);
  HistoryEntry e;
  e.kind = HistoryEntry::Kind::kExtract;
  e.config = cfg;
  e.before = current_;
  e.after = x.ranking;
  e.removed = x.removed;
  e.trace = x.trace;
  history_.push_back(std::move(e));
  current_ = x.ranking;
  return x;
}

ExtractionResult Session::Integrate(std::span<const Ranking> others,
                                    Prover& prover) {
  return Integrate(others, config_, prover);
}

ExtractionResult Session::Integrate(std::span<const Ranking> others,
                                    const StrategyConfig& cfg,
                                    Prover& prover) {
  std::vector<Ranking> all{current_};
  all.insert(all.end(), others.begin(), others.end());
  ExtractionResult x = saten::Integrate(all, cfg, prover);
  if (cfg.half_life) x.ranking = Decay(x.ranking, *cfg.half_life);
  HistoryEntry e;
  e.kind = HistoryEntry::Kind::kIntegrate;
  e.others.assign(others.begin(), others.end());
  e.config = cfg;
  e.before = current_;
  e.after = x.ranking;
  e.removed = x.removed;
  e.trace = x.trace;
  history_.push_back(std::move(e));
  current_ = x.ranking;
  return x;
}

Ranking Session::Apply(const Ranking& r, const HistoryEntry& e,
                       Prover& prover) {
  switch (e.kind) {
    case HistoryEntry::Kind::kRevise:
      return saten::Revise(r, e.incoming->formula, e.incoming->degree, e.config,
                           Placement::kBottom, prover)
          .after;
    case HistoryEntry::Kind::kExtract: {
      Ranking out = ContractExtract(r, e.config, prover).ranking;
      return e.config.half_life ? Decay(out, *e.config.half_life) : out;
    }
    case HistoryEntry::Kind::kIntegrate: {
      std::vector<Ranking> all{r};
      all.insert(all.end(), e.others.begin(), e.others.end());
      Ranking out = saten::Integrate(all, e.config, prover).ranking;
      return e.config.half_life ? Decay(out, *e.config.half_life) : out;
    }
  }
  return r;
}

Ranking Session::Replay(Prover& prover) const {
  Ranking r = initial_;
  for (const HistoryEntry& e : history_) r = Apply(r, e, prover);
  return r;
}

bool Session::Undo(Prover& prover) {
  if (history_.empty()) return false;
  history_.pop_back();
  current_ = initial_;
  for (HistoryEntry& e : history_) {
    e.before = current_;
    current_ = Apply(current_, e, prover);
    e.after = current_;
  }
  return true;
}

// }}}

}  // namespace saten
