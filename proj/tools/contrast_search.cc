// Randomized search for a small propositional ranking on which all six
// strategies disagree pairwise. Prints the first hit as a ranking file
// followed by the revision input.
//
//   contrast_search [--seed N] [--tries N] [--beliefs 9] [--ranks 4]

#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "saten/engine.h"
#include "saten/ranking_io.h"

namespace {

using saten::Formula;
using Rng = std::mt19937_64;

const char* kAtoms[] = {"a", "b", "c", "d", "e"};

Formula RandomLiteral(Rng& rng, int atoms) {
  Formula f = Formula::Proposition(kAtoms[rng() % atoms]);
  return rng() % 2 ? Formula::Not(f) : f;
}

// A literal, a disjunction of two literals, or an implication between
// atoms and literals.
Formula RandomClause(Rng& rng, int atoms) {
  switch (rng() % 3) {
    case 0: return RandomLiteral(rng, atoms);
    case 1: return Formula::Or(RandomLiteral(rng, atoms), RandomLiteral(rng, atoms));
    default:
      return Formula::Implies(Formula::Proposition(kAtoms[rng() % atoms]),
                              RandomLiteral(rng, atoms));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"search for a strategy-contrast example"};
  std::uint64_t seed = 1;
  long tries = 200000;
  int beliefs = 9;
  int ranks = 4;
  int atoms = 4;
  app.add_option("--seed", seed);
  app.add_option("--tries", tries);
  app.add_option("--beliefs", beliefs);
  app.add_option("--ranks", ranks);
  app.add_option("--atoms", atoms)->check(CLI::Range(2, 5));
  CLI11_PARSE(app, argc, argv);

  Rng rng(seed);
  saten::Prover prover;
  const Formula input = Formula::Proposition("a");
  const Formula neg = Formula::Not(input);
  for (long t = 0; t < tries; ++t) {
    // Four ranks, each non-empty; -a and some -a|x share a rank so hybrid's
    // adjustment step has something to do.
    std::vector<int> rank_of(static_cast<std::size_t>(beliefs));
    for (int i = 0; i < beliefs; ++i) {
      rank_of[static_cast<std::size_t>(i)] = i < ranks ? i : static_cast<int>(rng() % ranks);
    }
    std::shuffle(rank_of.begin(), rank_of.end(), rng);
    saten::Ranking r;
    const int neg_rank = rank_of[0];
    r.Insert(neg, saten::Degree(ranks - neg_rank, ranks + 1));
    r.Insert(Formula::Or(neg, RandomLiteral(rng, atoms)),
             saten::Degree(ranks - neg_rank, ranks + 1));
    bool ok = true;
    for (int i = 2; i < beliefs && ok; ++i) {
      Formula f = RandomClause(rng, atoms);
      if (r.Contains(f) || f == input ||
          prover.IsTautology(f) == saten::Answer::kYes) {
        ok = false;
        break;
      }
      int k = rank_of[static_cast<std::size_t>(i)];
      r.Insert(f, saten::Degree(ranks - k, ranks + 1));
    }
    if (!ok || static_cast<int>(r.Degrees().size()) != ranks) continue;
    if (prover.IsConsistent(r.Formulas()) != saten::Verdict::kConsistent) {
      continue;
    }

    std::set<std::set<std::string>> outcomes;
    bool failed = false;
    for (saten::Strategy s : saten::kAllStrategies) {
      saten::StrategyConfig cfg;
      cfg.strategy = s;
      try {
        auto out = saten::Revise(r, input, saten::Degree(1, 2), cfg,
                                 saten::Placement::kBottom, prover);
        std::set<std::string> fs;
        for (const Formula& f : out.after.Formulas()) fs.insert(saten::Print(f));
        outcomes.insert(fs);
      } catch (const std::exception&) {
        failed = true;
        break;
      }
    }
    if (failed || outcomes.size() != saten::kAllStrategies.size()) continue;

    std::cout << "# found after " << t + 1 << " tries (seed " << seed << ")\n"
              << saten::FormatRanking(r) << "# revise by " << saten::Print(input)
              << " at 0.5\n";
    for (saten::Strategy s : saten::kAllStrategies) {
      saten::StrategyConfig cfg;
      cfg.strategy = s;
      auto out = saten::Revise(r, input, saten::Degree(1, 2), cfg,
                               saten::Placement::kBottom, prover);
      std::cout << "# " << saten::ToString(s) << ":";
      for (const auto& b : out.after.beliefs()) {
        std::cout << ' ' << saten::Print(b.formula);
      }
      std::cout << '\n';
    }
    return 0;
  }
  std::cerr << "no example found\n";
  return 1;
}
