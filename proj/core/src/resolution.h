#ifndef SATEN_SRC_RESOLUTION_H_
#define SATEN_SRC_RESOLUTION_H_

#include <chrono>
#include <vector>

#include "saten/clause.h"
#include "saten/prover.h"

namespace saten::detail {

// Given-clause saturation with binary resolution and factoring, forward
// subsumption and tautology deletion. Iterative deepening on derivation
// depth: a level that saturates without pruning anything proves the input
// satisfiable. Clauses flagged in `support` are selected first.
ProofResult Saturate(const std::vector<Clause>& input,
                     const std::vector<bool>& support,
                     const ProofBudget& budget,
                     std::chrono::steady_clock::time_point deadline,
                     bool want_proof);

// θ-subsumption: some σ maps every literal of c into d.
bool Subsumes(const Clause& c, const Clause& d);

// Renames the variables of c to <prefix>0, <prefix>1, ... by first
// occurrence.
Clause RenameVariables(const Clause& c, const std::string& prefix);

}  // namespace saten::detail

#endif  // SATEN_SRC_RESOLUTION_H_
