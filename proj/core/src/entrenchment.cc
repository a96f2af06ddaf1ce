#include "saten/entrenchment.h"

#include <algorithm>
#include <map>
#include <set>

#include "saten/error.h"

namespace saten {

Ranking::Ranking(std::initializer_list<Belief> beliefs) {
  for (const Belief& b : beliefs) Insert(b.formula, b.degree);
}

void Ranking::CheckDegree(const Degree& d) {
  if (!d.IsOpenUnit()) {
    throw Error(ErrorKind::kDomain, "explicit degree " + d.ToString() +
                                        " outside the open interval (0,1)");
  }
}

void Ranking::Insert(const Formula& f, const Degree& d) {
  CheckDegree(d);
  if (Contains(f)) {
    throw Error(ErrorKind::kDuplicateBelief,
                "belief " + Print(f) + " is already ranked");
  }
  beliefs_.push_back(Belief{f, d});
}

void Ranking::Set(const Formula& f, const Degree& d) {
  CheckDegree(d);
  for (Belief& b : beliefs_) {
    if (b.formula == f) {
      b.degree = d;
      return;
    }
  }
  beliefs_.push_back(Belief{f, d});
}

void Ranking::Merge(const Formula& f, const Degree& d) {
  CheckDegree(d);
  for (Belief& b : beliefs_) {
    if (b.formula == f) {
      b.degree = std::max(b.degree, d);
      return;
    }
  }
  beliefs_.push_back(Belief{f, d});
}

bool Ranking::Erase(const Formula& f) {
  auto it = std::find_if(beliefs_.begin(), beliefs_.end(),
                         [&](const Belief& b) { return b.formula == f; });
  if (it == beliefs_.end()) return false;
  beliefs_.erase(it);
  return true;
}

std::optional<Degree> Ranking::Find(const Formula& f) const {
  for (const Belief& b : beliefs_) {
    if (b.formula == f) return b.degree;
  }
  return std::nullopt;
}

std::vector<Formula> Ranking::Formulas() const {
  std::vector<Formula> out;
  out.reserve(beliefs_.size());
  for (const Belief& b : beliefs_) out.push_back(b.formula);
  return out;
}

std::vector<Degree> Ranking::Degrees() const {
  std::vector<Degree> out;
  for (const Belief& b : beliefs_) out.push_back(b.degree);
  std::sort(out.begin(), out.end(), std::greater<>());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Formula> Ranking::AtDegree(const Degree& d) const {
  std::vector<Formula> out;
  for (const Belief& b : beliefs_) {
    if (b.degree == d) out.push_back(b.formula);
  }
  return out;
}

std::optional<Degree> Ranking::MaxDegree() const {
  if (beliefs_.empty()) return std::nullopt;
  return std::max_element(beliefs_.begin(), beliefs_.end(),
                          [](const Belief& a, const Belief& b) {
                            return a.degree < b.degree;
                          })->degree;
}

std::optional<Degree> Ranking::MinDegree() const {
  if (beliefs_.empty()) return std::nullopt;
  return std::min_element(beliefs_.begin(), beliefs_.end(),
                          [](const Belief& a, const Belief& b) {
                            return a.degree < b.degree;
                          })->degree;
}

bool operator==(const Ranking& a, const Ranking& b) {
  if (a.size() != b.size()) return false;
  for (const Belief& x : a.beliefs_) {
    auto d = b.Find(x.formula);
    if (!d || *d != x.degree) return false;
  }
  return true;
}

Cut CutAt(const Ranking& r, const Degree& d) {
  if (!(d > Degree::Zero() && d <= Degree::One())) {
    throw Error(ErrorKind::kDomain,
                "cut threshold " + d.ToString() + " outside (0,1]");
  }
  Cut cut{d, {}};
  for (const Belief& b : r.beliefs()) {
    if (b.degree >= d) cut.content.push_back(b.formula);
  }
  return cut;
}

Degree DegreeOf(const Ranking& r, const Formula& phi, Prover& prover) {
  Answer taut = prover.IsTautology(phi);
  if (taut == Answer::kYes) return Degree::One();

  const std::vector<Degree> thresholds = r.Degrees();
  if (thresholds.empty()) {
    if (taut == Answer::kUnknown) {
      throw Error(ErrorKind::kProverUnknown,
                  "could not decide whether " + Print(phi) + " is a tautology");
    }
    return Degree::Zero();
  }
  // Entailment is monotone in the cut, so a "no" for the whole ranking
  // settles every threshold at once.
  Answer all = prover.Entails(r.Formulas(), phi);
  if (all == Answer::kNo) return Degree::Zero();

  bool settled = all == Answer::kYes;
  for (const Degree& d : thresholds) {
    Answer a = d == thresholds.back() ? all
                                      : prover.Entails(CutAt(r, d).content, phi);
    if (a == Answer::kYes) return d;
    if (a == Answer::kNo) settled = true;
  }
  if (!settled) {
    throw Error(ErrorKind::kProverUnknown,
                "entailment of " + Print(phi) +
                    " undecided at every threshold within budget");
  }
  return Degree::Zero();
}

Ranking Normalize(const Ranking& r, Prover& prover) {
  if (prover.IsConsistent(r.Formulas()) == Verdict::kInconsistent) {
    throw Error(ErrorKind::kInconsistentInput,
                "cannot normalise an inconsistent ranking");
  }
  Ranking out;
  for (const Belief& b : r.beliefs()) {
    Degree d = DegreeOf(r, b.formula, prover);
    if (d == Degree::One()) continue;
    out.Insert(b.formula, d);
  }
  return out;
}

OrdinalRanking ToOrdinal(const Ranking& r) {
  OrdinalRanking o;
  for (const Degree& d : r.Degrees()) o.ranks.push_back(r.AtDegree(d));
  return o;
}

Ranking FromOrdinal(const OrdinalRanking& o) {
  const auto n = static_cast<std::int64_t>(o.ranks.size());
  Ranking r;
  for (std::int64_t k = 1; k <= n; ++k) {
    for (const Formula& f : o.ranks[static_cast<std::size_t>(k - 1)]) {
      r.Insert(f, Degree(n - k + 1, n + 1));
    }
  }
  return r;
}

Ranking Decay(const Ranking& r, const Degree& half_life, const Degree& floor) {
  if (!half_life.IsOpenUnit()) {
    throw Error(ErrorKind::kDomain,
                "half-life " + half_life.ToString() + " outside (0,1)");
  }
  Ranking out;
  for (const Belief& b : r.beliefs()) {
    Degree d = b.degree * half_life;
    if (d < floor) continue;
    out.Insert(b.formula, d);
  }
  return out;
}

}  // namespace saten
