#include "saten/sat.h"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace saten::sat {

namespace {

struct Timeout {};

class Dpll {
 public:
  Dpll(int num_vars, const std::vector<std::vector<Lit>>& clauses,
       const Options& options)
      : num_vars_(num_vars),
        options_(options),
        value_(static_cast<std::size_t>(num_vars) + 1, 0),
        reason_(static_cast<std::size_t>(num_vars) + 1, -1),
        occurs_(2 * (static_cast<std::size_t>(num_vars) + 1)) {
    for (std::size_t i = 0; i < clauses.size(); ++i) {
      std::vector<Lit> c = clauses[i];
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());
      bool tautology = false;
      for (Lit l : c) {
        if (std::binary_search(c.begin(), c.end(), -l)) tautology = true;
      }
      if (tautology) continue;
      int id = AddStep(ProofStep{c, static_cast<int>(i), -1, -1, 0});
      inputs_.push_back(id);
      for (Lit l : c) occurs_[Index(l)].push_back(id);
    }
    std::vector<int> count(static_cast<std::size_t>(num_vars) + 1, 0);
    for (int id : inputs_) {
      for (Lit l : steps_[id].clause) ++count[std::abs(l)];
    }
    for (int v = 1; v <= num_vars; ++v) {
      if (count[v] > 0) order_.push_back(v);
    }
    std::stable_sort(order_.begin(), order_.end(),
                     [&](int a, int b) { return count[a] > count[b]; });
  }

  Result Run() {
    Result result;
    try {
      int root = -1;
      for (int id : inputs_) {
        if (steps_[id].clause.empty()) root = id;
      }
      if (root < 0) {
        // Initial unit scan; afterwards propagation is driven by the trail.
        for (int id : inputs_) {
          if (steps_[id].clause.size() == 1 && root < 0) {
            Lit l = steps_[id].clause[0];
            if (Value(l) < 0) root = Analyze(id);
            else if (Value(l) == 0) Assign(l, id);
          }
        }
      }
      if (root < 0) root = Search();
      if (root < 0) {
        result.status = Result::Status::kSatisfiable;
        result.model.assign(static_cast<std::size_t>(num_vars_) + 1, false);
        for (int v = 1; v <= num_vars_; ++v) result.model[v] = value_[v] > 0;
        return result;
      }
      result.status = Result::Status::kUnsatisfiable;
      if (options_.want_proof) result.proof = ExtractProof(root);
    } catch (const Timeout&) {
      result.status = Result::Status::kTimeout;
    }
    return result;
  }

 private:
  static std::size_t Index(Lit l) {
    return 2 * static_cast<std::size_t>(std::abs(l)) + (l < 0 ? 1 : 0);
  }

  int Value(Lit l) const {
    int v = value_[std::abs(l)];
    return l > 0 ? v : -v;
  }

  void Assign(Lit l, int reason) {
    value_[std::abs(l)] = l > 0 ? 1 : -1;
    reason_[std::abs(l)] = reason;
    trail_.push_back(l);
  }

  void Undo(std::size_t trail_size) {
    while (trail_.size() > trail_size) {
      Lit l = trail_.back();
      trail_.pop_back();
      value_[std::abs(l)] = 0;
      reason_[std::abs(l)] = -1;
    }
    qhead_ = std::min(qhead_, trail_size);
  }

  int AddStep(ProofStep step) {
    steps_.push_back(std::move(step));
    return static_cast<int>(steps_.size()) - 1;
  }

  // Resolves step `a` (containing +pivot) with step `b` (containing -pivot).
  int Resolve(int a, int b, int pivot) {
    std::vector<Lit> out;
    for (Lit l : steps_[a].clause) {
      if (l != pivot) out.push_back(l);
    }
    for (Lit l : steps_[b].clause) {
      if (l != -pivot) out.push_back(l);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return AddStep(ProofStep{std::move(out), -1, a, b, pivot});
  }

  static bool Contains(const std::vector<Lit>& c, Lit l) {
    return std::binary_search(c.begin(), c.end(), l);
  }

  // Returns a falsified input clause, or -1.
  int Propagate() {
    while (qhead_ < trail_.size()) {
      Lit assigned = trail_[qhead_++];
      for (int id : occurs_[Index(-assigned)]) {
        const std::vector<Lit>& c = steps_[id].clause;
        Lit unassigned = 0;
        int free_count = 0;
        bool satisfied = false;
        for (Lit l : c) {
          int v = Value(l);
          if (v > 0) { satisfied = true; break; }
          if (v == 0) { unassigned = l; ++free_count; }
        }
        if (satisfied) continue;
        if (free_count == 0) return id;
        if (free_count == 1) Assign(unassigned, id);
      }
    }
    return -1;
  }

  // Resolves the conflict clause against propagation reasons until only
  // negated decisions remain.
  int Analyze(int conflict) {
    int k = conflict;
    for (std::size_t i = trail_.size(); i-- > 0;) {
      Lit l = trail_[i];
      int reason = reason_[std::abs(l)];
      if (reason < 0) continue;
      if (!Contains(steps_[k].clause, -l)) continue;
      // The reason contains l; k contains -l.
      k = l > 0 ? Resolve(reason, k, l) : Resolve(k, reason, -l);
    }
    return k;
  }

  int Search() {
    if (options_.deadline && (++nodes_ & 255) == 0 &&
        std::chrono::steady_clock::now() > *options_.deadline) {
      throw Timeout{};
    }
    if (int conflict = Propagate(); conflict >= 0) return Analyze(conflict);
    int var = 0;
    for (int v : order_) {
      if (value_[v] == 0) { var = v; break; }
    }
    if (var == 0) return -1;

    const std::size_t mark = trail_.size();
    const Lit first = options_.prefer_positive ? var : -var;
    Assign(first, -1);
    int k1 = Search();
    if (k1 < 0) return -1;
    Undo(mark);
    if (!Contains(steps_[k1].clause, -first)) return k1;

    Assign(-first, -1);
    int k2 = Search();
    if (k2 < 0) return -1;
    Undo(mark);
    if (!Contains(steps_[k2].clause, first)) return k2;

    // k1 holds -first, k2 holds first.
    return first > 0 ? Resolve(k2, k1, var) : Resolve(k1, k2, var);
  }

  std::vector<ProofStep> ExtractProof(int root) const {
    std::vector<char> needed(steps_.size(), 0);
    std::vector<int> stack{root};
    while (!stack.empty()) {
      int s = stack.back();
      stack.pop_back();
      if (needed[s]) continue;
      needed[s] = 1;
      if (steps_[s].left >= 0) stack.push_back(steps_[s].left);
      if (steps_[s].right >= 0) stack.push_back(steps_[s].right);
    }
    // Parents always precede children in steps_, so index order is a
    // topological order.
    std::vector<int> remap(steps_.size(), -1);
    std::vector<ProofStep> out;
    for (std::size_t s = 0; s < steps_.size(); ++s) {
      if (!needed[s]) continue;
      ProofStep step = steps_[s];
      if (step.left >= 0) step.left = remap[step.left];
      if (step.right >= 0) step.right = remap[step.right];
      remap[s] = static_cast<int>(out.size());
      out.push_back(std::move(step));
    }
    return out;
  }

  int num_vars_;
  Options options_;
  std::vector<ProofStep> steps_;
  std::vector<int> inputs_;
  std::vector<int> value_;
  std::vector<int> reason_;
  std::vector<std::vector<int>> occurs_;
  std::vector<int> order_;
  std::vector<Lit> trail_;
  std::size_t qhead_ = 0;
  unsigned nodes_ = 0;
};

}  // namespace

Result Solve(int num_vars, const std::vector<std::vector<Lit>>& clauses,
             const Options& options) {
  return Dpll(num_vars, clauses, options).Run();
}

}  // namespace saten::sat
