#include "saten/strategies.h"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "saten/error.h"

namespace saten {

std::string_view ToString(Strategy s) {
  switch (s) {
    case Strategy::kStandard: return "standard";
    case Strategy::kMaxi: return "maxi";
    case Strategy::kHybrid: return "hybrid";
    case Strategy::kGlobal: return "global";
    case Strategy::kLinear: return "linear";
    case Strategy::kQuick: return "quick";
  }
  return "maxi";
}

Strategy ParseStrategy(std::string_view name) {
  for (Strategy s : kAllStrategies) {
    if (ToString(s) == name) return s;
  }
  throw Error(ErrorKind::kConfig, "unknown strategy '" + std::string(name) +
                                      "' (expected standard, maxi, hybrid, "
                                      "global, linear or quick)");
}

void StrategyConfig::Validate() const {
  if (subsumption_removal && strategy == Strategy::kStandard) {
    throw Error(ErrorKind::kConfig,
                "subsumption removal cannot be combined with standard "
                "adjustment");
  }
  if (half_life && !half_life->IsOpenUnit()) {
    throw Error(ErrorKind::kDomain,
                "half-life " + half_life->ToString() + " outside (0,1)");
  }
  budget.Validate();
}

std::vector<std::string> ExtractionTrace::Warnings() const {
  std::vector<std::string> out;
  for (const RankRecord& r : ranks) {
    out.insert(out.end(), r.warnings.begin(), r.warnings.end());
  }
  return out;
}

namespace {

std::string Join(const std::vector<Formula>& fs) {
  std::string out = "{";
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (i > 0) out += ", ";
    out += Print(fs[i]);
  }
  return out + "}";
}

bool Has(const std::vector<Formula>& v, const Formula& f) {
  return std::find(v.begin(), v.end(), f) != v.end();
}

std::vector<Formula> Without(const std::vector<Formula>& v,
                             const std::vector<Formula>& drop) {
  std::vector<Formula> out;
  for (const Formula& f : v) {
    if (!Has(drop, f)) out.push_back(f);
  }
  return out;
}

std::vector<Formula> Concat(std::vector<Formula> a, const std::vector<Formula>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

std::string ExtractionTrace::ToText() const {
  std::ostringstream os;
  os << "strategy " << ToString(strategy);
  if (protected_formula) os << ", protecting " << Print(*protected_formula);
  os << '\n';
  for (const std::string& n : notes) os << "  note: " << n << '\n';
  for (const RankRecord& r : ranks) {
    os << "rank " << r.threshold << ": candidates " << Join(r.candidates)
       << '\n';
    for (const auto& c : r.conflicts) os << "  conflict " << Join(c) << '\n';
    if (!r.subsumed.empty()) os << "  subsumed " << Join(r.subsumed) << '\n';
    os << "  removed " << Join(r.removed) << '\n';
    os << "  kept " << Join(r.kept) << '\n';
    if (!r.regathered.empty()) {
      os << "  regathered " << Join(r.regathered) << '\n';
    }
    for (const std::string& w : r.warnings) os << "  warning: " << w << '\n';
  }
  return os.str();
}

SubsumptionSplit ApplySubsumptionRemoval(std::span<const Formula> candidates,
                                         const Formula& incoming,
                                         const StrategyConfig& cfg,
                                         Prover& prover) {
  if (cfg.strategy == Strategy::kStandard) {
    throw Error(ErrorKind::kConfig,
                "subsumption removal cannot be combined with standard "
                "adjustment");
  }
  SubsumptionSplit split;
  for (const Formula& b : candidates) {
    if (prover.SubsumedBy(b, incoming) == Answer::kYes) {
      split.removed_first.push_back(b);
    } else {
      split.remaining.push_back(b);
    }
  }
  return split;
}

std::vector<Belief> ApplyRecovery(std::span<const Belief> removed,
                                  const Formula& incoming, Prover& prover) {
  std::vector<Belief> out;
  for (const Belief& b : removed) {
    Formula weakened = Formula::Or(b.formula, incoming);
    if (prover.IsTautology(weakened) == Answer::kYes) continue;
    out.push_back(Belief{weakened, b.degree});
  }
  return out;
}

namespace {

// Shared state of one extraction run.
class Extraction {
 public:
  Extraction(const Ranking& r, const std::optional<ProtectedBelief>& p,
             const StrategyConfig& cfg, Prover& prover, Strategy strategy)
      : protected_(p), cfg_(cfg), prover_(prover) {
    cfg_.strategy = strategy;
    cfg_.Validate();
    trace_.strategy = strategy;
    for (const Belief& b : r.beliefs()) {
      if (p && b.formula == p->formula) continue;
      base_.Insert(b.formula, b.degree);
    }
    if (p) {
      trace_.protected_formula = p->formula;
      context_.push_back(p->formula);
      if (prover_.IsConsistent(context_) == Verdict::kInconsistent) {
        throw Error(ErrorKind::kProtectedInconsistent,
                    "protected belief " + Print(p->formula) +
                        " is self-contradictory");
      }
    }
  }

  const Ranking& base() const { return base_; }
  const std::vector<Formula>& context() const { return context_; }
  const std::optional<ProtectedBelief>& protected_belief() const {
    return protected_;
  }
  const StrategyConfig& cfg() const { return cfg_; }
  Prover& prover() { return prover_; }
  ExtractionTrace& trace() { return trace_; }

  RankRecord& NewRecord(const Degree& d) {
    trace_.ranks.push_back(RankRecord{d, base_.AtDegree(d), {}, {}, {}, {}, {}, {}});
    return trace_.ranks.back();
  }

  // Unsettled tests count as consistent.
  bool Inconsistent(const std::vector<Formula>& fs, RankRecord* rec) {
    Verdict v = prover_.IsConsistent(fs);
    if (v == Verdict::kUnknown && rec) {
      rec->warnings.push_back("prover budget exhausted testing " + Join(fs) +
                              "; treated as consistent");
    }
    return v == Verdict::kInconsistent;
  }

  std::vector<std::vector<Formula>> Conflicts(const std::vector<Formula>& cands,
                                              const std::vector<Formula>& ctx,
                                              RankRecord* rec) {
    MisResult mis = prover_.MinimalInconsistentSubsets(cands, ctx);
    if (!mis.complete && rec) {
      rec->warnings.push_back(
          "prover budget exhausted while enumerating conflicts; undecided "
          "subsets treated as consistent");
    }
    std::vector<std::vector<Formula>> out;
    for (const auto& subset : mis.subsets) {
      std::vector<Formula> s;
      for (std::size_t i : subset) s.push_back(cands[i]);
      out.push_back(std::move(s));
    }
    return out;
  }

  bool subsumption_active() const {
    return cfg_.subsumption_removal && protected_.has_value();
  }

  std::vector<Formula> SubsumedFirst(const std::vector<Formula>& to_remove) {
    if (!subsumption_active() || to_remove.empty()) return {};
    return ApplySubsumptionRemoval(to_remove, protected_->formula, cfg_,
                                   prover_)
        .removed_first;
  }

  void Remove(const std::vector<Formula>& fs) {
    for (const Formula& f : fs) removed_.insert(f);
  }

  ExtractionResult Finish() {
    ExtractionResult out;
    for (const Belief& b : base_.beliefs()) {
      if (removed_.contains(b.formula)) {
        out.removed.push_back(b);
      } else {
        out.ranking.Insert(b.formula, b.degree);
      }
    }
    if (protected_) out.ranking.Insert(protected_->formula, protected_->degree);
    out.trace = std::move(trace_);
    return out;
  }

 private:
  std::optional<ProtectedBelief> protected_;
  StrategyConfig cfg_;
  Prover& prover_;
  Ranking base_;
  std::vector<Formula> context_;
  std::set<Formula> removed_;
  ExtractionTrace trace_;
};

std::vector<Formula> UnionInOrder(const std::vector<Formula>& cands,
                                  const std::vector<std::vector<Formula>>& sets) {
  std::vector<Formula> out;
  for (const Formula& f : cands) {
    for (const auto& s : sets) {
      if (Has(s, f)) {
        out.push_back(f);
        break;
      }
    }
  }
  return out;
}

// One maxi-adjustment step at a rank: remove the union of the minimal
// subsets of `cands` inconsistent with `retained`. With subsumption removal,
// a rank in conflict first loses the beliefs the input entails, and is
// re-examined only if still inconsistent. Returns the beliefs removed.
std::vector<Formula> MaxiStep(Extraction& x, const std::vector<Formula>& cands,
                              const std::vector<Formula>& retained,
                              RankRecord& rec) {
  std::vector<Formula> first;
  if (x.subsumption_active() && x.Inconsistent(Concat(retained, cands), &rec)) {
    first = x.SubsumedFirst(cands);
    rec.subsumed = first;
  }
  std::vector<Formula> rest = Without(cands, first);
  if (!first.empty() && !x.Inconsistent(Concat(retained, rest), &rec)) {
    return first;
  }
  auto conflicts = x.Conflicts(rest, retained, &rec);
  rec.conflicts.insert(rec.conflicts.end(), conflicts.begin(), conflicts.end());
  return Concat(first, UnionInOrder(rest, conflicts));
}

// Standard adjustment's cut: the lowest threshold whose cut is consistent
// with the protected belief, or nullopt if not even the top rank is.
std::optional<Degree> LargestConsistentCut(Extraction& x) {
  const std::vector<Degree> thresholds = x.base().Degrees();
  std::optional<Degree> best;
  RankRecord scratch;
  if (!thresholds.empty() &&
      !x.Inconsistent(Concat(x.context(), x.base().Formulas()), &scratch)) {
    return thresholds.back();
  }
  for (const Degree& d : thresholds) {
    if (x.Inconsistent(Concat(x.context(), CutAt(x.base(), d).content),
                       &scratch)) {
      break;
    }
    best = d;
  }
  return best;
}

}  // namespace

ExtractionResult ExtractStandard(const Ranking& r,
                                 const std::optional<ProtectedBelief>& p,
                                 const StrategyConfig& cfg, Prover& prover) {
  Extraction x(r, p, cfg, prover, Strategy::kStandard);
  std::optional<Degree> cut = LargestConsistentCut(x);
  for (const Degree& d : x.base().Degrees()) {
    RankRecord& rec = x.NewRecord(d);
    if (cut && d >= *cut) {
      rec.kept = rec.candidates;
    } else {
      if (!cut || d < *cut) rec.conflicts.push_back(rec.candidates);
      rec.removed = rec.candidates;
      x.Remove(rec.removed);
    }
  }
  if (cut) {
    x.trace().notes.push_back("largest consistent cut at " + cut->ToString());
  } else if (!x.base().empty()) {
    x.trace().notes.push_back("no cut is consistent with the input");
  }
  return x.Finish();
}

ExtractionResult ExtractMaxi(const Ranking& r,
                             const std::optional<ProtectedBelief>& p,
                             const StrategyConfig& cfg, Prover& prover) {
  Extraction x(r, p, cfg, prover, Strategy::kMaxi);
  std::vector<Formula> retained = x.context();
  for (const Degree& d : x.base().Degrees()) {
    RankRecord& rec = x.NewRecord(d);
    rec.removed = MaxiStep(x, rec.candidates, retained, rec);
    rec.kept = Without(rec.candidates, rec.removed);
    x.Remove(rec.removed);
    retained = Concat(retained, rec.kept);
  }
  return x.Finish();
}

ExtractionResult ExtractHybrid(const Ranking& r,
                               const std::optional<ProtectedBelief>& p,
                               const StrategyConfig& cfg, Prover& prover) {
  Extraction x(r, p, cfg, prover, Strategy::kHybrid);
  const std::vector<Degree> thresholds = x.base().Degrees();

  if (cfg.hybrid_mode == HybridMode::kCore) {
    std::optional<Degree> cut = LargestConsistentCut(x);
    std::vector<Formula> retained = x.context();
    if (cut) retained = Concat(retained, CutAt(x.base(), *cut).content);
    x.trace().notes.push_back(
        cut ? "core is the cut at " + cut->ToString() : "core is empty");
    for (const Degree& d : thresholds) {
      RankRecord& rec = x.NewRecord(d);
      if (cut && d >= *cut) {
        rec.kept = rec.candidates;
        continue;
      }
      rec.removed = MaxiStep(x, rec.candidates, retained, rec);
      rec.kept = Without(rec.candidates, rec.removed);
      rec.regathered = rec.kept;
      x.Remove(rec.removed);
      retained = Concat(retained, rec.kept);
    }
    return x.Finish();
  }

  // Literal mode: the adjustment step drops -a and each b with -a|b at the
  // rank of -a.
  std::vector<Formula> dropped;
  if (p) {
    const Formula neg = Complement(p->formula);
    if (auto neg_degree = x.base().Find(neg)) {
      dropped.push_back(neg);
      for (const Belief& b : x.base().beliefs()) {
        if (b.formula == neg || b.degree != *neg_degree) continue;
        const Formula& f = b.formula;
        std::optional<Formula> consequent;
        if (f.connective() == Connective::kOr) {
          if (f.lhs() == neg) consequent = f.rhs();
          else if (f.rhs() == neg) consequent = f.lhs();
        } else if (f.connective() == Connective::kImplies &&
                   f.lhs() == p->formula) {
          consequent = f.rhs();
        }
        if (consequent && x.base().Contains(*consequent) &&
            !Has(dropped, *consequent)) {
          dropped.push_back(*consequent);
        }
      }
      x.trace().notes.push_back("adjustment step around " + Print(neg) +
                                " drops " + Join(dropped));
    } else {
      x.trace().notes.push_back(Print(neg) +
                                " is not ranked; adjustment step is empty");
    }
  }
  std::vector<Formula> retained = x.context();
  for (const Degree& d : thresholds) {
    RankRecord& rec = x.NewRecord(d);
    std::vector<Formula> pre;
    for (const Formula& f : rec.candidates) {
      if (Has(dropped, f)) pre.push_back(f);
    }
    std::vector<Formula> cands = Without(rec.candidates, pre);
    std::vector<Formula> removed = MaxiStep(x, cands, retained, rec);
    rec.removed = Concat(pre, removed);
    rec.kept = Without(rec.candidates, rec.removed);
    x.Remove(rec.removed);
    retained = Concat(retained, rec.kept);
  }
  return x.Finish();
}

ExtractionResult ExtractGlobal(const Ranking& r,
                               const std::optional<ProtectedBelief>& p,
                               const StrategyConfig& cfg, Prover& prover) {
  Extraction x(r, p, cfg, prover, Strategy::kGlobal);
  const Ranking& base = x.base();
  std::vector<Formula> pool = base.Formulas();
  std::vector<std::vector<Formula>> all_conflicts;
  std::vector<Formula> removed;
  RankRecord scratch;

  // Every conflict loses its least entrenched members.
  auto lowest_members = [&](const std::vector<std::vector<Formula>>& sets) {
    std::vector<std::vector<Formula>> lows;
    for (const auto& s : sets) {
      Degree low = Degree::One();
      for (const Formula& f : s) low = std::min(low, *base.Find(f));
      std::vector<Formula> l;
      for (const Formula& f : s) {
        if (*base.Find(f) == low) l.push_back(f);
      }
      lows.push_back(std::move(l));
    }
    return lows;
  };

  if (x.subsumption_active() &&
      x.Inconsistent(Concat(x.context(), pool), &scratch)) {
    removed = x.SubsumedFirst(pool);
    scratch.subsumed = removed;
  }
  // Each round removes at least one belief.
  for (std::size_t round = 0; round <= base.size(); ++round) {
    std::vector<Formula> remaining = Without(pool, removed);
    if (!x.Inconsistent(Concat(x.context(), remaining), &scratch)) break;
    auto conflicts = x.Conflicts(remaining, x.context(), &scratch);
    if (conflicts.empty()) break;
    all_conflicts.insert(all_conflicts.end(), conflicts.begin(), conflicts.end());
    removed = Concat(removed, UnionInOrder(remaining, lowest_members(conflicts)));
  }

  x.Remove(removed);
  for (const Degree& d : base.Degrees()) {
    RankRecord& rec = x.NewRecord(d);
    for (const auto& c : all_conflicts) {
      bool lowest_here = false;
      for (const auto& low : lowest_members({c})) {
        for (const Formula& f : low) lowest_here |= *base.Find(f) == d;
      }
      if (lowest_here) rec.conflicts.push_back(c);
    }
    for (const Formula& f : rec.candidates) {
      (Has(removed, f) ? rec.removed : rec.kept).push_back(f);
      if (Has(scratch.subsumed, f)) rec.subsumed.push_back(f);
    }
  }
  if (!scratch.warnings.empty() && !x.trace().ranks.empty()) {
    auto& w = x.trace().ranks.back().warnings;
    w.insert(w.end(), scratch.warnings.begin(), scratch.warnings.end());
  }
  x.trace().notes.push_back("conflicts computed over the whole pool");
  return x.Finish();
}

ExtractionResult ExtractLinear(const Ranking& r,
                               const std::optional<ProtectedBelief>& p,
                               const StrategyConfig& cfg, Prover& prover) {
  Extraction x(r, p, cfg, prover, Strategy::kLinear);
  std::vector<Formula> retained = x.context();
  for (const Degree& d : x.base().Degrees()) {
    RankRecord& rec = x.NewRecord(d);
    if (x.Inconsistent(Concat(retained, rec.candidates), &rec)) {
      rec.conflicts.push_back(rec.candidates);
      std::vector<Formula> first = x.SubsumedFirst(rec.candidates);
      std::vector<Formula> rest = Without(rec.candidates, first);
      rec.subsumed = first;
      if (!first.empty() && !x.Inconsistent(Concat(retained, rest), &rec)) {
        rec.removed = first;
      } else {
        rec.removed = rec.candidates;
      }
    }
    rec.kept = Without(rec.candidates, rec.removed);
    x.Remove(rec.removed);
    retained = Concat(retained, rec.kept);
  }
  return x.Finish();
}

ExtractionResult ExtractQuick(const Ranking& r,
                              const std::optional<ProtectedBelief>& p,
                              const StrategyConfig& cfg, Prover& prover) {
  Extraction x(r, p, cfg, prover, Strategy::kQuick);
  std::mt19937_64 rng(cfg.seed);
  std::vector<Formula> retained = x.context();
  for (const Degree& d : x.base().Degrees()) {
    RankRecord& rec = x.NewRecord(d);
    std::vector<Formula> remaining = rec.candidates;
    if (x.subsumption_active() &&
        x.Inconsistent(Concat(retained, remaining), &rec)) {
      rec.subsumed = x.SubsumedFirst(remaining);
      rec.removed = rec.subsumed;
      remaining = Without(remaining, rec.subsumed);
    }
    while (x.Inconsistent(Concat(retained, remaining), &rec)) {
      // Grow a prefix from the left end until it clashes with what is held.
      std::vector<Formula> prefix;
      for (const Formula& f : remaining) {
        prefix.push_back(f);
        if (x.Inconsistent(Concat(retained, prefix), &rec)) break;
      }
      rec.conflicts.push_back(prefix);
      std::vector<Formula> culprits;
      for (const Formula& f : prefix) {
        if (!x.Inconsistent(Concat(retained, Without(prefix, {f})), &rec)) {
          culprits.push_back(f);
        }
      }
      if (culprits.empty()) break;
      Formula chosen = culprits[rng() % culprits.size()];
      rec.removed.push_back(chosen);
      remaining = Without(remaining, {chosen});
    }
    rec.kept = Without(rec.candidates, rec.removed);
    x.Remove(rec.removed);
    retained = Concat(retained, rec.kept);
  }
  return x.Finish();
}

ExtractionResult Extract(const Ranking& r,
                         const std::optional<ProtectedBelief>& p,
                         const StrategyConfig& cfg, Prover& prover) {
  switch (cfg.strategy) {
    case Strategy::kStandard: return ExtractStandard(r, p, cfg, prover);
    case Strategy::kMaxi: return ExtractMaxi(r, p, cfg, prover);
    case Strategy::kHybrid: return ExtractHybrid(r, p, cfg, prover);
    case Strategy::kGlobal: return ExtractGlobal(r, p, cfg, prover);
    case Strategy::kLinear: return ExtractLinear(r, p, cfg, prover);
    case Strategy::kQuick: return ExtractQuick(r, p, cfg, prover);
  }
  return ExtractMaxi(r, p, cfg, prover);
}

}  // namespace saten
