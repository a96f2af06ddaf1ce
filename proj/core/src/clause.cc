#include "saten/clause.h"

#include <algorithm>
#include <set>

#include "saten/error.h"

namespace saten {

bool Atom::ground() const {
  return std::all_of(args.begin(), args.end(),
                     [](const Term& t) { return t.ground(); });
}

std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
  if (auto c = a.predicate.compare(b.predicate); c != 0) {
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (auto c = a.args.size() <=> b.args.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (auto c = a.args[i] <=> b.args[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Literal& a, const Literal& b) {
  if (auto c = a.atom <=> b.atom; c != 0) return c;
  return a.positive <=> b.positive;
}

std::ostream& operator<<(std::ostream& os, const Atom& a) {
  os << a.predicate;
  if (!a.args.empty()) {
    os << '(';
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      if (i > 0) os << ',';
      os << a.args[i];
    }
    os << ')';
  }
  return os;
}

std::ostream& operator<<(std::ostream& os, const Literal& l) {
  if (!l.positive) os << '-';
  return os << l.atom;
}

// {{{ Substitution and unification

Term Apply(const Substitution& s, const Term& t) {
  if (t.is_variable()) {
    auto it = s.find(t.name());
    if (it == s.end()) return t;
    // Bindings may chain through other variables.
    return Apply(s, it->second);
  }
  if (t.args().empty()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(Apply(s, a));
  return Term::Function(t.name(), std::move(args));
}

Atom Apply(const Substitution& s, const Atom& a) {
  Atom out{a.predicate, {}};
  out.args.reserve(a.args.size());
  for (const Term& t : a.args) out.args.push_back(Apply(s, t));
  return out;
}

bool Unify(const Term& a, const Term& b, Substitution* s) {
  Term x = Apply(*s, a);
  Term y = Apply(*s, b);
  if (x == y) return true;
  if (x.is_variable()) {
    if (y.Contains(x.name())) return false;
    (*s)[x.name()] = y;
    return true;
  }
  if (y.is_variable()) {
    if (x.Contains(y.name())) return false;
    (*s)[y.name()] = x;
    return true;
  }
  if (x.kind() != y.kind() || x.name() != y.name() ||
      x.args().size() != y.args().size()) {
    return false;
  }
  for (std::size_t i = 0; i < x.args().size(); ++i) {
    if (!Unify(x.args()[i], y.args()[i], s)) return false;
  }
  return true;
}

bool Unify(const Atom& a, const Atom& b, Substitution* s) {
  if (a.predicate != b.predicate || a.args.size() != b.args.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!Unify(a.args[i], b.args[i], s)) return false;
  }
  return true;
}

// }}}

// {{{ Clause

Clause::Clause(std::vector<Literal> literals) : literals_(std::move(literals)) {
  std::sort(literals_.begin(), literals_.end());
  literals_.erase(std::unique(literals_.begin(), literals_.end()),
                  literals_.end());
}

bool Clause::ground() const {
  return std::all_of(literals_.begin(), literals_.end(),
                     [](const Literal& l) { return l.atom.ground(); });
}

bool Clause::Tautology() const {
  // Sorted by atom first, so complementary literals are adjacent.
  for (std::size_t i = 1; i < literals_.size(); ++i) {
    if (literals_[i - 1].atom == literals_[i].atom) return true;
  }
  return false;
}

bool Clause::Horn() const {
  return std::count_if(literals_.begin(), literals_.end(),
                       [](const Literal& l) { return l.positive; }) <= 1;
}

namespace {

std::size_t TermWeight(const Term& t) {
  std::size_t w = 1;
  for (const Term& a : t.args()) w += TermWeight(a);
  return w;
}

void TermVariables(const Term& t, std::vector<std::string>* out) {
  if (t.is_variable()) {
    if (std::find(out->begin(), out->end(), t.name()) == out->end()) {
      out->push_back(t.name());
    }
    return;
  }
  for (const Term& a : t.args()) TermVariables(a, out);
}

}  // namespace

std::size_t Clause::Weight() const {
  std::size_t w = 0;
  for (const Literal& l : literals_) {
    ++w;
    for (const Term& t : l.atom.args) w += TermWeight(t);
  }
  return w;
}

Clause Clause::Substitute(const Substitution& s) const {
  std::vector<Literal> out;
  out.reserve(literals_.size());
  for (const Literal& l : literals_) {
    out.push_back(Literal{l.positive, Apply(s, l.atom)});
  }
  return Clause(std::move(out));
}

std::vector<std::string> Clause::Variables() const {
  std::vector<std::string> out;
  for (const Literal& l : literals_) {
    for (const Term& t : l.atom.args) TermVariables(t, &out);
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Clause& c) {
  os << '{';
  for (std::size_t i = 0; i < c.literals().size(); ++i) {
    if (i > 0) os << ", ";
    os << c.literals()[i];
  }
  return os << '}';
}

// }}}

// {{{ Clausification

namespace {

using Cnf = std::vector<std::vector<Literal>>;

class Clausifier {
 public:
  Clausifier(SymbolSupply* symbols, std::size_t max_clauses)
      : symbols_(symbols), max_clauses_(max_clauses) {}

  // Negation normal form with quantifiers eliminated: universals become
  // fresh free variables, existentials skolem terms over the universals in
  // scope.
  Formula Nnf(const Formula& f, bool positive) {
    switch (f.connective()) {
      case Connective::kProposition:
      case Connective::kPredicate: {
        std::vector<Term> args;
        for (const Term& t : f.args()) args.push_back(Apply(env_, t));
        Formula atom = f.connective() == Connective::kProposition
                           ? f
                           : Formula::Predicate(f.name(), std::move(args));
        return positive ? atom : Formula::Not(atom);
      }
      case Connective::kNot:
        return Nnf(f.operand(), !positive);
      case Connective::kAnd:
        return positive ? Formula::And(Nnf(f.lhs(), true), Nnf(f.rhs(), true))
                        : Formula::Or(Nnf(f.lhs(), false), Nnf(f.rhs(), false));
      case Connective::kOr:
        return positive ? Formula::Or(Nnf(f.lhs(), true), Nnf(f.rhs(), true))
                        : Formula::And(Nnf(f.lhs(), false), Nnf(f.rhs(), false));
      case Connective::kImplies:
        return positive ? Formula::Or(Nnf(f.lhs(), false), Nnf(f.rhs(), true))
                        : Formula::And(Nnf(f.lhs(), true), Nnf(f.rhs(), false));
      case Connective::kForAll:
      case Connective::kExists: {
        bool universal = (f.connective() == Connective::kForAll) == positive;
        std::optional<Term> shadowed;
        if (auto it = env_.find(f.name()); it != env_.end()) {
          shadowed = it->second;
        }
        if (universal) {
          std::string v = symbols_->FreshVariable(f.name());
          env_.insert_or_assign(f.name(), Term::Variable(v));
          universals_.push_back(v);
        } else {
          std::vector<Term> args;
          for (const std::string& u : universals_) {
            args.push_back(Term::Variable(u));
          }
          std::string sk = symbols_->FreshSkolem();
          env_.insert_or_assign(f.name(),
                                args.empty() ? Term::Constant(sk)
                                             : Term::Function(sk, std::move(args)));
        }
        Formula body = Nnf(f.operand(), positive);
        if (universal) universals_.pop_back();
        if (shadowed) {
          env_.insert_or_assign(f.name(), *shadowed);
        } else {
          env_.erase(f.name());
        }
        return body;
      }
    }
    return f;
  }

  Cnf ToCnf(const Formula& nnf) {
    switch (nnf.connective()) {
      case Connective::kProposition:
        return {{Literal{true, Atom{nnf.name(), {}}}}};
      case Connective::kPredicate:
        return {{Literal{true, Atom{nnf.name(), nnf.args()}}}};
      case Connective::kNot: {
        const Formula& a = nnf.operand();
        return {{Literal{false, Atom{a.name(), a.args()}}}};
      }
      case Connective::kAnd: {
        Cnf out = ToCnf(nnf.lhs());
        Cnf rhs = ToCnf(nnf.rhs());
        out.insert(out.end(), rhs.begin(), rhs.end());
        Check(out.size());
        return out;
      }
      case Connective::kOr: {
        Cnf lhs = ToCnf(nnf.lhs());
        Cnf rhs = ToCnf(nnf.rhs());
        Check(lhs.size() * rhs.size());
        Cnf out;
        out.reserve(lhs.size() * rhs.size());
        for (const auto& l : lhs) {
          for (const auto& r : rhs) {
            std::vector<Literal> c = l;
            c.insert(c.end(), r.begin(), r.end());
            out.push_back(std::move(c));
          }
        }
        return out;
      }
      default:
        break;
    }
    throw Error(ErrorKind::kConfig, "internal: formula not in NNF");
  }

 private:
  void Check(std::size_t n) const {
    if (n > max_clauses_) {
      throw Error(ErrorKind::kBudgetExceeded,
                  "clausal form exceeds " + std::to_string(max_clauses_) +
                      " clauses");
    }
  }

  SymbolSupply* symbols_;
  std::size_t max_clauses_;
  Substitution env_;
  std::vector<std::string> universals_;
};

}  // namespace

std::vector<Clause> ClausifyFormula(const Formula& f, SymbolSupply* symbols,
                                    std::size_t max_clauses) {
  Clausifier c(symbols, max_clauses);
  Cnf cnf = c.ToCnf(c.Nnf(f, true));
  std::set<Clause> seen;
  std::vector<Clause> out;
  for (auto& lits : cnf) {
    Clause clause(std::move(lits));
    if (clause.Tautology()) continue;
    if (seen.insert(clause).second) out.push_back(std::move(clause));
  }
  return out;
}

std::vector<Clause> Clausify(std::span<const Formula> fs,
                             std::size_t max_clauses) {
  SymbolSupply symbols;
  std::vector<Clause> out;
  std::set<Clause> seen;
  for (const Formula& f : fs) {
    for (Clause& c : ClausifyFormula(f, &symbols, max_clauses)) {
      if (seen.insert(c).second) out.push_back(std::move(c));
    }
    if (out.size() > max_clauses) {
      throw Error(ErrorKind::kBudgetExceeded,
                  "clausal form exceeds " + std::to_string(max_clauses) +
                      " clauses");
    }
  }
  return out;
}

// }}}

}  // namespace saten
