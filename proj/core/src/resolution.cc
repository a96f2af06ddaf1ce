#include "resolution.h"

#include <algorithm>
#include <queue>
#include <set>
#include <tuple>

namespace saten::detail {

namespace {

bool Match(const Term& pattern, const Term& target, Substitution* s) {
  if (pattern.is_variable()) {
    auto [it, inserted] = s->try_emplace(pattern.name(), target);
    return inserted || it->second == target;
  }
  if (pattern.kind() != target.kind() || pattern.name() != target.name() ||
      pattern.args().size() != target.args().size()) {
    return false;
  }
  for (std::size_t i = 0; i < pattern.args().size(); ++i) {
    if (!Match(pattern.args()[i], target.args()[i], s)) return false;
  }
  return true;
}

bool MatchLiteral(const Literal& p, const Literal& t, Substitution* s) {
  if (p.positive != t.positive || p.atom.predicate != t.atom.predicate ||
      p.atom.args.size() != t.atom.args.size()) {
    return false;
  }
  for (std::size_t i = 0; i < p.atom.args.size(); ++i) {
    if (!Match(p.atom.args[i], t.atom.args[i], s)) return false;
  }
  return true;
}

bool SubsumesFrom(const std::vector<Literal>& c, std::size_t i,
                  const std::vector<Literal>& d, const Substitution& s) {
  if (i == c.size()) return true;
  for (const Literal& target : d) {
    Substitution next = s;
    if (MatchLiteral(c[i], target, &next) && SubsumesFrom(c, i + 1, d, next)) {
      return true;
    }
  }
  return false;
}

struct Node {
  Clause clause;
  std::size_t depth = 0;
  bool support = false;
  Refutation::Step::Rule rule = Refutation::Step::Rule::kInput;
  int left = -1;
  int right = -1;
};

enum class LevelOutcome { kRefuted, kSaturated, kPruned, kExhausted };

class Saturation {
 public:
  Saturation(const std::vector<Clause>& input, const std::vector<bool>& support,
             const ProofBudget& budget,
             std::chrono::steady_clock::time_point deadline)
      : input_(input), support_(support), budget_(budget), deadline_(deadline) {}

  ProofResult Run(bool want_proof) {
    for (std::size_t limit = 1; limit <= budget_.max_depth; ++limit) {
      LevelOutcome outcome = RunLevel(limit);
      if (outcome == LevelOutcome::kRefuted) {
        ProofResult r{Verdict::kInconsistent, std::nullopt};
        if (want_proof) r.refutation = ExtractProof();
        return r;
      }
      if (outcome == LevelOutcome::kSaturated) {
        return {Verdict::kConsistent, std::nullopt};
      }
      if (outcome == LevelOutcome::kExhausted) break;
    }
    return {Verdict::kUnknown, std::nullopt};
  }

 private:
  LevelOutcome RunLevel(std::size_t limit) {
    nodes_.clear();
    kept_.clear();
    processed_.clear();
    empty_ = -1;
    pruned_ = false;
    using Key = std::tuple<int, std::size_t, int>;
    std::priority_queue<Key, std::vector<Key>, std::greater<Key>> passive;

    for (std::size_t i = 0; i < input_.size(); ++i) {
      Node n;
      n.clause = RenameVariables(input_[i], "V__");
      n.support = i < support_.size() && support_[i];
      if (n.clause.empty()) {
        nodes_.push_back(std::move(n));
        empty_ = static_cast<int>(nodes_.size()) - 1;
        return LevelOutcome::kRefuted;
      }
      if (n.clause.Tautology() || IsSubsumed(n.clause)) continue;
      int id = Add(std::move(n));
      passive.emplace(Priority(id), nodes_[id].clause.Weight(), id);
    }

    while (!passive.empty()) {
      if (std::chrono::steady_clock::now() > deadline_) {
        return LevelOutcome::kExhausted;
      }
      int given = std::get<2>(passive.top());
      passive.pop();
      processed_.push_back(given);

      std::vector<Node> fresh = Factors(given);
      for (int other : processed_) {
        for (Node& n : Resolvents(given, other)) fresh.push_back(std::move(n));
      }
      for (Node& n : fresh) {
        if (n.clause.empty()) {
          nodes_.push_back(std::move(n));
          empty_ = static_cast<int>(nodes_.size()) - 1;
          return LevelOutcome::kRefuted;
        }
        if (n.clause.Tautology()) continue;
        if (n.depth > limit) {
          pruned_ = true;
          continue;
        }
        if (IsSubsumed(n.clause)) continue;
        int id = Add(std::move(n));
        passive.emplace(Priority(id), nodes_[id].clause.Weight(), id);
        if (nodes_.size() > budget_.max_clauses) {
          return LevelOutcome::kExhausted;
        }
      }
    }
    return pruned_ ? LevelOutcome::kPruned : LevelOutcome::kSaturated;
  }

  int Priority(int id) const { return nodes_[id].support ? 0 : 1; }

  int Add(Node n) {
    nodes_.push_back(std::move(n));
    int id = static_cast<int>(nodes_.size()) - 1;
    kept_.push_back(id);
    return id;
  }

  bool IsSubsumed(const Clause& c) const {
    for (int k : kept_) {
      const Clause& d = nodes_[k].clause;
      if (d.size() <= c.size() && Subsumes(d, c)) return true;
    }
    return false;
  }

  std::vector<Node> Factors(int id) {
    std::vector<Node> out;
    const Clause& c = nodes_[id].clause;
    const auto& lits = c.literals();
    for (std::size_t i = 0; i < lits.size(); ++i) {
      for (std::size_t j = i + 1; j < lits.size(); ++j) {
        if (lits[i].positive != lits[j].positive) continue;
        Substitution s;
        if (!Unify(lits[i].atom, lits[j].atom, &s)) continue;
        Node n;
        n.clause = RenameVariables(c.Substitute(s), "V__");
        n.depth = nodes_[id].depth + 1;
        n.support = nodes_[id].support;
        n.rule = Refutation::Step::Rule::kFactor;
        n.left = id;
        out.push_back(std::move(n));
      }
    }
    return out;
  }

  std::vector<Node> Resolvents(int a, int b) {
    std::vector<Node> out;
    const Clause& ca = nodes_[a].clause;
    Clause cb = RenameVariables(nodes_[b].clause, "W__");
    for (std::size_t i = 0; i < ca.size(); ++i) {
      const Literal& la = ca.literals()[i];
      for (std::size_t j = 0; j < cb.size(); ++j) {
        const Literal& lb = cb.literals()[j];
        if (la.positive == lb.positive) continue;
        Substitution s;
        if (!Unify(la.atom, lb.atom, &s)) continue;
        std::vector<Literal> lits;
        for (std::size_t k = 0; k < ca.size(); ++k) {
          if (k != i) lits.push_back(ca.literals()[k]);
        }
        for (std::size_t k = 0; k < cb.size(); ++k) {
          if (k != j) lits.push_back(cb.literals()[k]);
        }
        Node n;
        n.clause = RenameVariables(Clause(std::move(lits)).Substitute(s), "V__");
        n.depth = std::max(nodes_[a].depth, nodes_[b].depth) + 1;
        n.support = nodes_[a].support || nodes_[b].support;
        n.rule = Refutation::Step::Rule::kResolve;
        n.left = a;
        n.right = b;
        out.push_back(std::move(n));
      }
    }
    return out;
  }

  Refutation ExtractProof() const {
    std::vector<char> needed(nodes_.size(), 0);
    std::vector<int> stack{empty_};
    while (!stack.empty()) {
      int s = stack.back();
      stack.pop_back();
      if (s < 0 || needed[s]) continue;
      needed[s] = 1;
      stack.push_back(nodes_[s].left);
      stack.push_back(nodes_[s].right);
    }
    std::vector<int> remap(nodes_.size(), -1);
    Refutation r;
    for (std::size_t s = 0; s < nodes_.size(); ++s) {
      if (!needed[s]) continue;
      const Node& n = nodes_[s];
      Refutation::Step step;
      step.rule = n.rule;
      step.clause = n.clause;
      step.left = n.left >= 0 ? remap[n.left] : -1;
      step.right = n.right >= 0 ? remap[n.right] : -1;
      remap[s] = static_cast<int>(r.steps.size());
      r.steps.push_back(std::move(step));
    }
    return r;
  }

  const std::vector<Clause>& input_;
  const std::vector<bool>& support_;
  const ProofBudget& budget_;
  std::chrono::steady_clock::time_point deadline_;

  std::vector<Node> nodes_;
  std::vector<int> kept_;
  std::vector<int> processed_;
  int empty_ = -1;
  bool pruned_ = false;
};

void RenameTerm(const Term& t, const std::string& prefix,
                std::map<std::string, Term>* names) {
  if (!t.is_variable()) {
    for (const Term& a : t.args()) RenameTerm(a, prefix, names);
    return;
  }
  if (!names->contains(t.name())) {
    names->emplace(t.name(),
                   Term::Variable(prefix + std::to_string(names->size())));
  }
}

// Simultaneous replacement; unlike Apply() it never chases bindings, so old
// and new names may overlap.
Term Replace(const Term& t, const Substitution& names) {
  if (t.is_variable()) return names.at(t.name());
  if (t.args().empty()) return t;
  std::vector<Term> args;
  for (const Term& a : t.args()) args.push_back(Replace(a, names));
  return Term::Function(t.name(), std::move(args));
}

}  // namespace

bool Subsumes(const Clause& c, const Clause& d) {
  if (c.size() > d.size()) return false;
  return SubsumesFrom(c.literals(), 0, d.literals(), {});
}

Clause RenameVariables(const Clause& c, const std::string& prefix) {
  Substitution names;
  for (const Literal& l : c.literals()) {
    for (const Term& t : l.atom.args) RenameTerm(t, prefix, &names);
  }
  if (names.empty()) return c;
  std::vector<Literal> lits;
  for (const Literal& l : c.literals()) {
    Atom a{l.atom.predicate, {}};
    for (const Term& t : l.atom.args) a.args.push_back(Replace(t, names));
    lits.push_back(Literal{l.positive, std::move(a)});
  }
  return Clause(std::move(lits));
}

ProofResult Saturate(const std::vector<Clause>& input,
                     const std::vector<bool>& support,
                     const ProofBudget& budget,
                     std::chrono::steady_clock::time_point deadline,
                     bool want_proof) {
  return Saturation(input, support, budget, deadline).Run(want_proof);
}

}  // namespace saten::detail
