#ifndef SATEN_SAT_H_
#define SATEN_SAT_H_

#include <chrono>
#include <optional>
#include <vector>

namespace saten::sat {

// Literals are non-zero integers: +v is variable v, -v its negation.
using Lit = int;

// One node of a resolution refutation. Inputs reference the caller's clause
// index; resolvents name their two parents (earlier steps) and the pivot
// variable, which occurs positively in `left` and negatively in `right`.
struct ProofStep {
  std::vector<Lit> clause;
  int input = -1;
  int left = -1;
  int right = -1;
  int pivot = 0;
};

struct Options {
  // Record a refutation when the clause set is unsatisfiable.
  bool want_proof = false;
  // Try the positive phase of each decision variable first.
  bool prefer_positive = true;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct Result {
  enum class Status { kSatisfiable, kUnsatisfiable, kTimeout };
  Status status = Status::kSatisfiable;
  // model[v] for 1 <= v <= num_vars; unconstrained variables are false.
  std::vector<bool> model;
  // Topologically ordered; the last step is the empty clause.
  std::vector<ProofStep> proof;
};

// DPLL with unit propagation. Conflicts are explained by resolving the
// falsified clause against the reasons of propagated literals, and the two
// branches of a split are combined by resolution on the split variable, so an
// unsatisfiable run yields a tree-like resolution refutation. A branch whose
// explanation does not mention the split variable makes the sibling branch
// redundant and is skipped.
Result Solve(int num_vars, const std::vector<std::vector<Lit>>& clauses,
             const Options& options = {});

}  // namespace saten::sat

#endif  // SATEN_SAT_H_
