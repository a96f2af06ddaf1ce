#ifndef SATEN_ENTRENCHMENT_H_
#define SATEN_ENTRENCHMENT_H_

#include <optional>
#include <vector>

#include "saten/degree.h"
#include "saten/formula.h"
#include "saten/prover.h"

namespace saten {

struct Belief {
  Formula formula;
  Degree degree;

  friend bool operator==(const Belief&, const Belief&) = default;
};

// Finite partial entrenchment ranking: explicit beliefs with degrees strictly
// inside (0,1). Beliefs keep their insertion order, which quick adjustment
// reads as the left-to-right order within a rank.
class Ranking {
 public:
  Ranking() = default;
  Ranking(std::initializer_list<Belief> beliefs);

  // Throws DuplicateBelief if f is present, DomainError unless 0 < d < 1.
  void Insert(const Formula& f, const Degree& d);
  // Inserts, or overwrites the degree of an existing entry in place.
  void Set(const Formula& f, const Degree& d);
  // Inserts, or raises an existing entry to max(old, d).
  void Merge(const Formula& f, const Degree& d);
  bool Erase(const Formula& f);

  std::optional<Degree> Find(const Formula& f) const;
  bool Contains(const Formula& f) const { return Find(f).has_value(); }

  const std::vector<Belief>& beliefs() const { return beliefs_; }
  std::size_t size() const { return beliefs_.size(); }
  bool empty() const { return beliefs_.empty(); }

  std::vector<Formula> Formulas() const;
  // Distinct degrees, highest first.
  std::vector<Degree> Degrees() const;
  // Beliefs at exactly degree d, in insertion order.
  std::vector<Formula> AtDegree(const Degree& d) const;
  std::optional<Degree> MaxDegree() const;
  std::optional<Degree> MinDegree() const;

  // Same formula-to-degree map; insertion order is ignored.
  friend bool operator==(const Ranking& a, const Ranking& b);

 private:
  static void CheckDegree(const Degree& d);
  std::vector<Belief> beliefs_;
};

struct Cut {
  Degree threshold;
  std::vector<Formula> content;
};

// Ranks listed most important first; rank 1 is ranks[0].
struct OrdinalRanking {
  std::vector<std::vector<Formula>> ranks;

  friend bool operator==(const OrdinalRanking&, const OrdinalRanking&) = default;
};

// All explicit beliefs with degree >= d. DomainError unless 0 < d <= 1.
Cut CutAt(const Ranking& r, const Degree& d);

// 1 for tautologies, else the largest explicit degree whose cut entails phi,
// else 0. Only explicit degrees are candidate thresholds since the degree is
// a step function of them. Throws ProverUnknown when no threshold could be
// settled within budget.
Degree DegreeOf(const Ranking& r, const Formula& phi, Prover& prover);

// Every explicit belief moves to its entailment degree in r. Tautologous
// beliefs (degree 1) leave the explicit part. Throws InconsistentInput when
// r is provably inconsistent.
Ranking Normalize(const Ranking& r, Prover& prover);

OrdinalRanking ToOrdinal(const Ranking& r);
// Rank k of n maps to (n - k + 1) / (n + 1). Throws DuplicateBelief.
Ranking FromOrdinal(const OrdinalRanking& o);

inline const Degree& DefaultEvaporationFloor() {
  static const Degree floor(1, 1000000);
  return floor;
}

// Multiplies every degree by half_life and drops entries that fall below
// `floor`. DomainError unless 0 < half_life < 1.
Ranking Decay(const Ranking& r, const Degree& half_life,
              const Degree& floor = DefaultEvaporationFloor());

}  // namespace saten

#endif  // SATEN_ENTRENCHMENT_H_
