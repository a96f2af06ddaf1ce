#ifndef SATEN_CLAUSE_H_
#define SATEN_CLAUSE_H_

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "saten/formula.h"

namespace saten {

struct Atom {
  std::string predicate;
  std::vector<Term> args;

  bool ground() const;
  friend bool operator==(const Atom&, const Atom&) = default;
  friend std::strong_ordering operator<=>(const Atom& a, const Atom& b);
};

struct Literal {
  bool positive = true;
  Atom atom;

  Literal Negated() const { return Literal{!positive, atom}; }
  friend bool operator==(const Literal&, const Literal&) = default;
  friend std::strong_ordering operator<=>(const Literal& a, const Literal& b);
};

std::ostream& operator<<(std::ostream& os, const Atom& a);
std::ostream& operator<<(std::ostream& os, const Literal& l);

using Substitution = std::map<std::string, Term>;

Term Apply(const Substitution& s, const Term& t);
Atom Apply(const Substitution& s, const Atom& a);

// Most general unifier extending `s`, with occurs check.
bool Unify(const Term& a, const Term& b, Substitution* s);
bool Unify(const Atom& a, const Atom& b, Substitution* s);

// A disjunction of literals, kept sorted and duplicate-free. The empty clause
// is the contradiction.
class Clause {
 public:
  Clause() = default;
  explicit Clause(std::vector<Literal> literals);

  const std::vector<Literal>& literals() const { return literals_; }
  std::size_t size() const { return literals_.size(); }
  bool empty() const { return literals_.empty(); }
  bool ground() const;
  // Contains some literal together with its complement.
  bool Tautology() const;
  bool Horn() const;
  // Total symbol count; used as the clause weight during search.
  std::size_t Weight() const;

  Clause Substitute(const Substitution& s) const;
  std::vector<std::string> Variables() const;

  friend bool operator==(const Clause&, const Clause&) = default;
  friend auto operator<=>(const Clause& a, const Clause& b) {
    return a.literals_ <=> b.literals_;
  }

 private:
  std::vector<Literal> literals_;
};

std::ostream& operator<<(std::ostream& os, const Clause& c);

// Issues the "__"-tagged names for skolem symbols and renamed variables.
class SymbolSupply {
 public:
  std::string FreshSkolem() { return "sk__" + std::to_string(++skolems_); }
  std::string FreshVariable(const std::string& base) {
    return base + "__" + std::to_string(++variables_);
  }

 private:
  int skolems_ = 0;
  int variables_ = 0;
};

// Clausal normal form of one formula: negation normal form, standardised
// bound variables, skolemised existentials, then distribution of | over &.
// Tautologous clauses are dropped. Throws BudgetExceeded once the clause
// count passes `max_clauses`.
std::vector<Clause> ClausifyFormula(const Formula& f, SymbolSupply* symbols,
                                    std::size_t max_clauses);

// Equisatisfiable CNF of a formula set, with fresh symbols per formula.
std::vector<Clause> Clausify(std::span<const Formula> fs,
                             std::size_t max_clauses = 50000);

}  // namespace saten

#endif  // SATEN_CLAUSE_H_
