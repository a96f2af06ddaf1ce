#include "saten/prover.h"

#include <algorithm>
#include <bit>
#include <deque>
#include <set>
#include <sstream>

#include "resolution.h"
#include "saten/error.h"
#include "saten/sat.h"

namespace saten {

void ProofBudget::Validate() const {
  if (max_depth == 0 || max_clauses == 0 || max_time.count() <= 0) {
    throw Error(ErrorKind::kDomain, "proof budget limits must be positive");
  }
}

std::string_view ToString(Verdict v) {
  switch (v) {
    case Verdict::kConsistent: return "consistent";
    case Verdict::kInconsistent: return "inconsistent";
    case Verdict::kUnknown: return "unknown";
  }
  return "unknown";
}

std::string_view ToString(Answer a) {
  switch (a) {
    case Answer::kYes: return "yes";
    case Answer::kNo: return "no";
    case Answer::kUnknown: return "unknown";
  }
  return "unknown";
}

std::string Refutation::ToText() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const Step& s = steps[i];
    os << i << ": " << s.clause << "  [";
    switch (s.rule) {
      case Step::Rule::kInput: os << "input"; break;
      case Step::Rule::kInstance: os << "instance " << s.left; break;
      case Step::Rule::kFactor: os << "factor " << s.left; break;
      case Step::Rule::kResolve:
        os << "resolve " << s.left << ' ' << s.right;
        break;
    }
    os << "]\n";
  }
  return os.str();
}

struct Prover::Compiled {
  int id = 0;
  std::vector<Clause> clauses;
  bool ground = true;
  bool function_free = true;
  // Ground clauses as DPLL literals; filled only when `ground`.
  std::vector<std::vector<sat::Lit>> lits;
};

namespace {

using Clock = std::chrono::steady_clock;

bool TermFunctionFree(const Term& t) {
  return t.kind() != Term::Kind::kFunction;
}

void CollectConstants(const Term& t, std::set<Term>* out) {
  if (t.kind() == Term::Kind::kConstant) out->insert(t);
  for (const Term& a : t.args()) CollectConstants(a, out);
}

}  // namespace

Prover::Prover(ProofBudget budget) : budget_(budget) { budget_.Validate(); }

Prover::~Prover() = default;

int Prover::AtomId(const Atom& a) {
  auto [it, inserted] =
      atom_ids_.try_emplace(a, static_cast<int>(atoms_.size()) + 1);
  if (inserted) atoms_.push_back(a);
  return it->second;
}

const Prover::Compiled& Prover::Compile(const Formula& f) {
  if (auto it = compiled_.find(f); it != compiled_.end()) return *it->second;
  auto c = std::make_unique<Compiled>();
  c->id = static_cast<int>(compiled_.size());
  c->clauses = ClausifyFormula(f, &symbols_, budget_.max_clauses);
  for (const Clause& clause : c->clauses) {
    if (!clause.ground()) c->ground = false;
    for (const Literal& l : clause.literals()) {
      for (const Term& t : l.atom.args) {
        if (!TermFunctionFree(t)) c->function_free = false;
      }
    }
  }
  if (c->ground) {
    for (const Clause& clause : c->clauses) {
      std::vector<sat::Lit> lits;
      for (const Literal& l : clause.literals()) {
        int v = AtomId(l.atom);
        lits.push_back(l.positive ? v : -v);
      }
      c->lits.push_back(std::move(lits));
    }
  }
  const Compiled& ref = *c;
  compiled_.emplace(f, std::move(c));
  return ref;
}

const std::vector<Clause>& Prover::ClausesOf(const Formula& f) {
  return Compile(f).clauses;
}

ProofResult Prover::Decide(const std::vector<const Compiled*>& parts,
                           bool want_proof) {
  const Clock::time_point deadline = Clock::now() + budget_.max_time;
  bool ground = true;
  bool function_free = true;
  for (const Compiled* p : parts) {
    ground = ground && p->ground;
    function_free = function_free && p->function_free;
  }

  // Provenance of each clause handed to DPLL, for proof reconstruction.
  struct Origin {
    const Clause* input;
    std::optional<Clause> instance;
  };
  std::vector<std::vector<sat::Lit>> lits;
  std::vector<Origin> origins;

  if (ground) {
    for (const Compiled* p : parts) {
      for (std::size_t i = 0; i < p->clauses.size(); ++i) {
        lits.push_back(p->lits[i]);
        origins.push_back(Origin{&p->clauses[i], std::nullopt});
      }
    }
  } else if (function_free) {
    // Finite Herbrand universe: ground out over the constants present.
    std::set<Term> constants;
    std::size_t instances = 0;
    for (const Compiled* p : parts) {
      for (const Clause& c : p->clauses) {
        for (const Literal& l : c.literals()) {
          for (const Term& t : l.atom.args) CollectConstants(t, &constants);
        }
      }
    }
    if (constants.empty()) constants.insert(Term::Constant("c__0"));
    const std::vector<Term> universe(constants.begin(), constants.end());
    for (const Compiled* p : parts) {
      for (const Clause& c : p->clauses) {
        std::size_t n = 1;
        for (std::size_t k = 0; k < c.Variables().size() && n <= budget_.max_clauses; ++k) {
          n *= universe.size();
        }
        instances += n;
      }
    }
    if (instances > budget_.max_clauses) {
      function_free = false;
    } else {
      for (const Compiled* p : parts) {
        for (const Clause& c : p->clauses) {
          std::vector<std::string> vars = c.Variables();
          std::vector<std::size_t> choice(vars.size(), 0);
          while (true) {
            Substitution s;
            for (std::size_t k = 0; k < vars.size(); ++k) {
              s.emplace(vars[k], universe[choice[k]]);
            }
            Clause inst = vars.empty() ? c : c.Substitute(s);
            std::vector<sat::Lit> ls;
            for (const Literal& l : inst.literals()) {
              int v = AtomId(l.atom);
              ls.push_back(l.positive ? v : -v);
            }
            lits.push_back(std::move(ls));
            origins.push_back(Origin{
                &c, vars.empty() ? std::nullopt : std::optional<Clause>(inst)});
            std::size_t k = 0;
            while (k < choice.size() && ++choice[k] == universe.size()) {
              choice[k++] = 0;
            }
            if (k == choice.size()) break;
          }
        }
      }
    }
  }

  if (ground || function_free) {
    sat::Options options;
    options.want_proof = want_proof;
    options.deadline = deadline;
    sat::Result r = sat::Solve(static_cast<int>(atoms_.size()), lits, options);
    if (r.status == sat::Result::Status::kTimeout) {
      return {Verdict::kUnknown, std::nullopt};
    }
    if (r.status == sat::Result::Status::kSatisfiable) {
      return {Verdict::kConsistent, std::nullopt};
    }
    ProofResult out{Verdict::kInconsistent, std::nullopt};
    if (!want_proof) return out;
    Refutation proof;
    std::vector<int> remap(r.proof.size(), -1);
    for (std::size_t i = 0; i < r.proof.size(); ++i) {
      const sat::ProofStep& step = r.proof[i];
      if (step.input >= 0) {
        const Origin& o = origins[step.input];
        proof.steps.push_back({Refutation::Step::Rule::kInput, *o.input, -1, -1});
        if (o.instance) {
          int parent = static_cast<int>(proof.steps.size()) - 1;
          proof.steps.push_back(
              {Refutation::Step::Rule::kInstance, *o.instance, parent, -1});
        }
      } else {
        std::vector<Literal> ls;
        for (sat::Lit l : step.clause) {
          ls.push_back(Literal{l > 0, atoms_[std::abs(l) - 1]});
        }
        proof.steps.push_back({Refutation::Step::Rule::kResolve,
                               Clause(std::move(ls)), remap[step.left],
                               remap[step.right]});
      }
      remap[i] = static_cast<int>(proof.steps.size()) - 1;
    }
    out.refutation = std::move(proof);
    return out;
  }

  std::vector<Clause> clauses;
  std::vector<bool> support;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (const Clause& c : parts[i]->clauses) {
      clauses.push_back(c);
      // The last part is the negated goal for entailment queries.
      support.push_back(i + 1 == parts.size());
    }
  }
  return detail::Saturate(clauses, support, budget_, deadline, want_proof);
}

Verdict Prover::CachedConsistency(const std::vector<const Compiled*>& parts) {
  std::vector<int> key;
  key.reserve(parts.size());
  for (const Compiled* p : parts) key.push_back(p->id);
  std::sort(key.begin(), key.end());
  key.erase(std::unique(key.begin(), key.end()), key.end());
  if (auto it = verdicts_.find(key); it != verdicts_.end()) return it->second;
  Verdict v = Decide(parts, false).verdict;
  if (v == Verdict::kUnknown) ++unknown_count_;
  verdicts_.emplace(std::move(key), v);
  return v;
}

Verdict Prover::IsConsistent(std::span<const Formula> fs) {
  try {
    std::vector<const Compiled*> parts;
    for (const Formula& f : fs) parts.push_back(&Compile(f));
    return CachedConsistency(parts);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kBudgetExceeded) throw;
    ++unknown_count_;
    return Verdict::kUnknown;
  }
}

ProofResult Prover::Refute(std::span<const Formula> fs) {
  try {
    std::vector<const Compiled*> parts;
    for (const Formula& f : fs) parts.push_back(&Compile(f));
    ProofResult r = Decide(parts, true);
    if (r.verdict == Verdict::kUnknown) ++unknown_count_;
    return r;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kBudgetExceeded) throw;
    ++unknown_count_;
    return {Verdict::kUnknown, std::nullopt};
  }
}

Answer Prover::Entails(std::span<const Formula> fs, const Formula& goal) {
  std::vector<Formula> all(fs.begin(), fs.end());
  all.push_back(Formula::Not(goal));
  switch (IsConsistent(all)) {
    case Verdict::kInconsistent: return Answer::kYes;
    case Verdict::kConsistent: return Answer::kNo;
    case Verdict::kUnknown: break;
  }
  return Answer::kUnknown;
}

Answer Prover::IsTautology(const Formula& f) { return Entails({}, f); }

Answer Prover::SubsumedBy(const Formula& b, const Formula& a) {
  return Entails(std::span<const Formula>(&a, 1), b);
}

// {{{ Horn

namespace {

// SLD resolution for Horn sets with function symbols, bounded by depth.
class Sld {
 public:
  Sld(const std::vector<Clause>& program, std::size_t max_depth,
      Clock::time_point deadline)
      : max_depth_(max_depth), deadline_(deadline) {
    for (const Clause& c : program) {
      auto head = std::find_if(c.literals().begin(), c.literals().end(),
                               [](const Literal& l) { return l.positive; });
      if (head == c.literals().end()) continue;
      Rule r{head->atom, {}};
      for (const Literal& l : c.literals()) {
        if (!l.positive) r.body.push_back(l.atom);
      }
      rules_.push_back(std::move(r));
    }
  }

  bool Prove(std::vector<Atom> goals) {
    for (std::size_t limit = 1; limit <= max_depth_; ++limit) {
      if (Solve(goals, {}, limit)) return true;
    }
    return false;
  }

 private:
  struct Rule {
    Atom head;
    std::vector<Atom> body;
  };

  bool Solve(const std::vector<Atom>& goals, const Substitution& s,
             std::size_t depth) {
    if (goals.empty()) return true;
    if (depth == 0 || Clock::now() > deadline_) return false;
    Atom goal = Apply(s, goals.front());
    for (const Rule& rule : rules_) {
      ++renames_;
      Substitution rename;
      std::function<Term(const Term&)> fresh = [&](const Term& t) -> Term {
        if (t.is_variable()) {
          return Term::Variable(t.name() + "_" + std::to_string(renames_));
        }
        std::vector<Term> args;
        for (const Term& a : t.args()) args.push_back(fresh(a));
        return t.args().empty() ? t : Term::Function(t.name(), std::move(args));
      };
      auto rename_atom = [&](const Atom& a) {
        Atom out{a.predicate, {}};
        for (const Term& t : a.args) out.args.push_back(fresh(t));
        return out;
      };
      Substitution next = s;
      if (!Unify(goal, rename_atom(rule.head), &next)) continue;
      std::vector<Atom> rest;
      for (const Atom& b : rule.body) rest.push_back(rename_atom(b));
      rest.insert(rest.end(), goals.begin() + 1, goals.end());
      if (Solve(rest, next, depth - 1)) return true;
    }
    return false;
  }

  std::vector<Rule> rules_;
  std::size_t max_depth_;
  Clock::time_point deadline_;
  std::size_t renames_ = 0;
};

}  // namespace

Answer Prover::EntailsHorn(std::span<const Formula> fs, const Formula& goal) {
  if (!goal.is_atom() || !FreeVariables(goal).empty()) {
    throw Error(ErrorKind::kNotHorn, "Horn goal must be a ground atom");
  }
  std::vector<const Compiled*> parts;
  for (const Formula& f : fs) parts.push_back(&Compile(f));
  bool ground = true;
  bool function_free = true;
  for (const Compiled* p : parts) {
    for (const Clause& c : p->clauses) {
      if (!c.Horn()) {
        std::ostringstream os;
        os << "clause " << c << " is not Horn";
        throw Error(ErrorKind::kNotHorn, os.str());
      }
    }
    ground = ground && p->ground;
    function_free = function_free && p->function_free;
  }
  Atom goal_atom{goal.name(), goal.args()};

  if (!ground && !function_free) {
    std::vector<Clause> program;
    std::vector<std::vector<Atom>> queries{{goal_atom}};
    for (const Compiled* p : parts) {
      for (const Clause& c : p->clauses) {
        program.push_back(c);
        if (std::none_of(c.literals().begin(), c.literals().end(),
                         [](const Literal& l) { return l.positive; })) {
          std::vector<Atom> q;
          for (const Literal& l : c.literals()) q.push_back(l.atom);
          queries.push_back(std::move(q));
        }
      }
    }
    Sld sld(program, budget_.max_depth, Clock::now() + budget_.max_time);
    for (auto& q : queries) {
      if (sld.Prove(q)) return Answer::kYes;
    }
    return Answer::kNo;
  }

  std::vector<std::vector<sat::Lit>> clauses;
  if (ground) {
    for (const Compiled* p : parts) {
      clauses.insert(clauses.end(), p->lits.begin(), p->lits.end());
    }
  } else {
    std::set<Term> constants;
    for (const Term& t : goal_atom.args) CollectConstants(t, &constants);
    for (const Compiled* p : parts) {
      for (const Clause& c : p->clauses) {
        for (const Literal& l : c.literals()) {
          for (const Term& t : l.atom.args) CollectConstants(t, &constants);
        }
      }
    }
    if (constants.empty()) constants.insert(Term::Constant("c__0"));
    const std::vector<Term> universe(constants.begin(), constants.end());
    for (const Compiled* p : parts) {
      for (const Clause& c : p->clauses) {
        std::vector<std::string> vars = c.Variables();
        std::vector<std::size_t> choice(vars.size(), 0);
        while (true) {
          Substitution s;
          for (std::size_t k = 0; k < vars.size(); ++k) {
            s.emplace(vars[k], universe[choice[k]]);
          }
          std::vector<sat::Lit> ls;
          const Clause instance = c.Substitute(s);
          for (const Literal& l : instance.literals()) {
            int v = AtomId(l.atom);
            ls.push_back(l.positive ? v : -v);
          }
          clauses.push_back(std::move(ls));
          std::size_t k = 0;
          while (k < choice.size() && ++choice[k] == universe.size()) {
            choice[k++] = 0;
          }
          if (k == choice.size()) break;
        }
      }
    }
  }

  // Forward chaining: each clause waits on a counter of unproved body atoms.
  const std::size_t n = atoms_.size() + 1;
  std::vector<std::vector<std::size_t>> waiting(n);
  std::vector<std::size_t> pending(clauses.size());
  std::vector<char> derived(n, 0);
  std::vector<int> queue;
  auto fire = [&](std::size_t c) -> bool {
    auto head = std::find_if(clauses[c].begin(), clauses[c].end(),
                             [](sat::Lit l) { return l > 0; });
    if (head == clauses[c].end()) return true;  // contradiction derived
    if (!derived[*head]) {
      derived[*head] = 1;
      queue.push_back(*head);
    }
    return false;
  };
  for (std::size_t c = 0; c < clauses.size(); ++c) {
    for (sat::Lit l : clauses[c]) {
      if (l < 0) {
        waiting[-l].push_back(c);
        ++pending[c];
      }
    }
  }
  for (std::size_t c = 0; c < clauses.size(); ++c) {
    if (pending[c] == 0 && fire(c)) return Answer::kYes;
  }
  for (std::size_t q = 0; q < queue.size(); ++q) {
    for (std::size_t c : waiting[queue[q]]) {
      if (--pending[c] == 0 && fire(c)) return Answer::kYes;
    }
  }
  auto it = atom_ids_.find(goal_atom);
  return it != atom_ids_.end() && derived[it->second] ? Answer::kYes
                                                      : Answer::kNo;
}

// }}}

// {{{ Minimal inconsistent subsets

MisResult Prover::MinimalInconsistentSubsets(
    std::span<const Formula> candidates, std::span<const Formula> context,
    MisMethod method) {
  if (method == MisMethod::kAuto) {
    method = candidates.size() < 10 ? MisMethod::kEnumerate : MisMethod::kMarco;
  }
  MisResult result = method == MisMethod::kEnumerate
                         ? BruteForceMis(candidates, context)
                         : MarcoMis(candidates, context);
  std::sort(result.subsets.begin(), result.subsets.end(),
            [](const auto& a, const auto& b) {
              return a.size() != b.size() ? a.size() < b.size() : a < b;
            });
  return result;
}

MisResult Prover::BruteForceMis(std::span<const Formula> candidates,
                                std::span<const Formula> context) {
  MisResult result;
  const std::size_t n = candidates.size();
  std::vector<const Compiled*> base;
  for (const Formula& f : context) base.push_back(&Compile(f));
  std::vector<const Compiled*> cands;
  for (const Formula& f : candidates) cands.push_back(&Compile(f));

  auto test = [&](std::uint32_t mask) {
    std::vector<const Compiled*> parts = base;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) parts.push_back(cands[i]);
    }
    Verdict v = CachedConsistency(parts);
    if (v == Verdict::kUnknown) result.complete = false;
    return v == Verdict::kInconsistent;
  };

  const std::uint32_t full = n == 0 ? 0 : (1u << n) - 1;
  if (!test(full)) return result;

  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = 1; m <= full; ++m) masks.push_back(m);
  std::stable_sort(masks.begin(), masks.end(), [](auto a, auto b) {
    return std::popcount(a) < std::popcount(b);
  });
  std::vector<std::uint32_t> found;
  for (std::uint32_t m : masks) {
    // A superset of a minimal subset is inconsistent but not minimal.
    if (std::any_of(found.begin(), found.end(),
                    [m](std::uint32_t f) { return (m & f) == f; })) {
      continue;
    }
    if (test(m)) found.push_back(m);
  }
  for (std::uint32_t m : found) {
    std::vector<std::size_t> subset;
    for (std::size_t i = 0; i < n; ++i) {
      if (m & (1u << i)) subset.push_back(i);
    }
    result.subsets.push_back(std::move(subset));
  }
  return result;
}

// Seed-grow-shrink enumeration over a map of explored subsets (MARCO): the
// map is a CNF over one variable per candidate, blocking supersets of every
// found minimal inconsistent subset and subsets of every found maximal
// consistent one.
MisResult Prover::MarcoMis(std::span<const Formula> candidates,
                           std::span<const Formula> context) {
  MisResult result;
  const int n = static_cast<int>(candidates.size());
  std::vector<const Compiled*> base;
  for (const Formula& f : context) base.push_back(&Compile(f));
  std::vector<const Compiled*> cands;
  for (const Formula& f : candidates) cands.push_back(&Compile(f));

  auto inconsistent = [&](const std::vector<char>& in) {
    std::vector<const Compiled*> parts = base;
    for (int i = 0; i < n; ++i) {
      if (in[i]) parts.push_back(cands[i]);
    }
    Verdict v = CachedConsistency(parts);
    if (v == Verdict::kUnknown) result.complete = false;
    return v == Verdict::kInconsistent;
  };

  std::vector<char> all(n, 1);
  if (!inconsistent(all)) return result;

  std::vector<std::vector<sat::Lit>> map;
  while (true) {
    sat::Result seed_model = sat::Solve(n, map);
    if (seed_model.status != sat::Result::Status::kSatisfiable) break;
    std::vector<char> seed(n, 0);
    for (int i = 0; i < n; ++i) seed[i] = seed_model.model[i + 1] ? 1 : 0;

    if (!inconsistent(seed)) {
      for (int i = 0; i < n; ++i) {
        if (seed[i]) continue;
        seed[i] = 1;
        if (inconsistent(seed)) seed[i] = 0;
      }
      std::vector<sat::Lit> block;
      for (int i = 0; i < n; ++i) {
        if (!seed[i]) block.push_back(i + 1);
      }
      map.push_back(std::move(block));
    } else {
      for (int i = 0; i < n; ++i) {
        if (!seed[i]) continue;
        seed[i] = 0;
        if (!inconsistent(seed)) seed[i] = 1;
      }
      std::vector<sat::Lit> block;
      std::vector<std::size_t> subset;
      for (int i = 0; i < n; ++i) {
        if (seed[i]) {
          block.push_back(-(i + 1));
          subset.push_back(static_cast<std::size_t>(i));
        }
      }
      result.subsets.push_back(std::move(subset));
      map.push_back(std::move(block));
    }
  }
  return result;
}

// }}}

}  // namespace saten
