// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>

#include "generators.h"
#include "oracles.h"
#include "saten/engine.h"
#include "saten/error.h"
#include "saten/examples.h"
#include "saten/ranking_io.h"

namespace saten {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void Check(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (failures.size() < 5) failures.push_back(what);
  }
};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Show(std::span<const Formula> fs) {
  std::string s = "{";
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (i) s += ", ";
    s += Print(fs[i]);
  }
  return s + "}";
}

std::string Show(const Ranking& r) {
  std::string s;
  for (const Belief& b : r.beliefs()) {
    s += b.degree.ToString() + ":" + Print(b.formula) + " ";
  }
  return s;
}

StrategyConfig With(Strategy s) {
  StrategyConfig cfg;
  cfg.strategy = s;
  return cfg;
}

std::set<Formula> AsSet(const Ranking& r) {
  std::vector<Formula> fs = r.Formulas();
  return {fs.begin(), fs.end()};
}

// A ranking with a consistent base, by rejection.
Ranking ConsistentRanking(gen::Rng& rng, int beliefs, int ranks, int atoms,
                          int depth) {
  for (;;) {
    Ranking r = gen::PropositionalRanking(rng, beliefs, ranks, atoms, depth);
    if (!r.empty() && oracle::Consistent(r.Formulas())) return r;
  }
}

Formula SatisfiableFormula(gen::Rng& rng, int atoms, int depth) {
  for (;;) {
    Formula f = gen::Propositional(rng, atoms, depth);
    if (oracle::Consistent(std::vector<Formula>{f})) return f;
  }
}

// An input that clashes with r half of the time.
Formula Input(gen::Rng& rng, const Ranking& r, int atoms) {
  if (rng() % 2 == 0) {
    const auto& bs = r.beliefs();
    Formula neg = Formula::Not(bs[rng() % bs.size()].formula);
    if (oracle::Consistent(std::vector<Formula>{neg})) return neg;
  }
  return SatisfiableFormula(rng, atoms, 2);
}

std::optional<Degree> RandomDegree(gen::Rng& rng) {
  if (rng() % 2 == 0) return std::nullopt;
  return Degree(static_cast<std::int64_t>(1 + rng() % 19), 20);
}

// {{{ 1. postulates

Outcome Postulates() {
  Outcome o;
  gen::Rng rng(1001);
  Prover prover;
  const auto start = Clock::now();
  int revisions = 0;
  for (int i = 0; i < 300; ++i) {
    const int atoms = 2 + static_cast<int>(rng() % 7);
    Ranking r = ConsistentRanking(rng, 12, 5, atoms, 2);
    Formula a = Input(rng, r, atoms);
    std::optional<Degree> d = RandomDegree(rng);
    std::vector<Formula> expanded = r.Formulas();
    expanded.push_back(a);
    const bool vacuous = oracle::Consistent(expanded);
    for (Strategy s : kAllStrategies) {
      ++revisions;
      std::string tag = std::string(ToString(s)) + " on " + Show(r) +
                        " by " + Print(a);
      RevisionOutcome out =
          Revise(r, a, d, With(s), Placement::kBottom, prover);
      std::vector<Formula> after = out.after.Formulas();
      o.Check(oracle::Entails(after, a), "success: " + tag);
      o.Check(oracle::Consistent(after), "consistency: " + tag);
      for (const Formula& f : after) {
        o.Check(oracle::Entails(expanded, f),
                "inclusion: " + Print(f) + " in " + tag);
      }
      if (vacuous) {
        for (const Formula& b : r.Formulas()) {
          o.Check(oracle::Entails(after, b),
                  "vacuity: lost " + Print(b) + " in " + tag);
        }
        // Nothing to give up: the result is the normalized expansion.
        Ranking expansion = r;
        expansion.Erase(a);
        expansion.Insert(a, out.incoming.degree);
        Ranking normalized;
        for (const Belief& b : expansion.beliefs()) {
          Degree deg = oracle::DegreeOf(expansion, b.formula);
          if (deg < Degree::One()) normalized.Insert(b.formula, deg);
        }
        o.Check(out.after == normalized, "vacuity: " + Show(out.after) +
                                             "!= " + Show(normalized) +
                                             " in " + tag);
      }
    }
  }
  const double secs = Seconds(start);
  o.Check(secs < 60, "took " + std::to_string(secs) + "s");
  o.detail = std::to_string(revisions) + " revisions in " +
             std::to_string(secs).substr(0, 5) + "s";
  return o;
}

// }}}
// {{{ 2. equivalences

Outcome Equivalences() {
  Outcome o;
  gen::Rng rng(2002);
  Prover prover;
  for (int i = 0; i < 100; ++i) {
    const int atoms = 2 + static_cast<int>(rng() % 5);
    std::vector<Formula> fs =
        gen::PropositionalRanking(rng, 8, 8, atoms, 2).Formulas();
    std::vector<int> order(fs.size());
    std::iota(order.begin(), order.end(), 1);
    std::shuffle(order.begin(), order.end(), rng);
    Ranking singletons;
    for (std::size_t k = 0; k < fs.size(); ++k) {
      singletons.Insert(fs[k], Degree(order[k], static_cast<std::int64_t>(
                                                    fs.size() + 1)));
    }
    Formula a = Input(rng, singletons, atoms);
    std::optional<Degree> d = RandomDegree(rng);
    auto maxi = Revise(singletons, a, d, With(Strategy::kMaxi),
                       Placement::kBottom, prover);
    auto linear = Revise(singletons, a, d, With(Strategy::kLinear),
                         Placement::kBottom, prover);
    o.Check(AsSet(maxi.after) == AsSet(linear.after),
            "maxi/linear differ on " + Show(singletons) + " by " + Print(a));
  }
  for (int i = 0; i < 100; ++i) {
    const int atoms = 2 + static_cast<int>(rng() % 5);
    std::vector<Formula> fs =
        gen::PropositionalRanking(rng, 8, 3, atoms, 2).Formulas();
    Ranking flat;
    for (const Formula& f : fs) flat.Insert(f, Degree(1, 2));
    Formula a = Input(rng, flat, atoms);
    std::optional<Degree> d = RandomDegree(rng);
    auto global = Revise(flat, a, d, With(Strategy::kGlobal),
                         Placement::kBottom, prover);
    auto maxi = Revise(flat, a, d, With(Strategy::kMaxi), Placement::kBottom,
                       prover);
    o.Check(AsSet(global.after) == AsSet(maxi.after),
            "global/maxi differ on " + Show(flat) + " by " + Print(a));
  }
  o.detail = "100 singleton-rank and 100 single-rank instances";
  return o;
}

// }}}
// {{{ 3. contrast example

Outcome Contrast() {
  Outcome o;
  const ExampleEntry& e = FindExample("contrast");
  o.Check(e.initial.size() == 9, "beliefs: " + std::to_string(e.initial.size()));
  o.Check(e.initial.Degrees().size() == 4,
          "ranks: " + std::to_string(e.initial.Degrees().size()));
  for (const Formula& f : e.initial.Formulas()) {
    for (const std::string& atom : oracle::Atoms(f)) {
      o.Check(atom.find('(') == std::string::npos, "not propositional: " + atom);
    }
  }
  Prover prover;
  std::set<std::vector<std::string>> results;
  for (Strategy s : kAllStrategies) {
    ExampleRun run = RunExample(e, s, {}, prover);
    results.insert(run.beliefs);
    o.Check(run.matches_expected, std::string(ToString(s)) + " changed");
  }
  o.Check(results.size() == 6,
          std::to_string(results.size()) + " distinct results");
  o.detail = std::to_string(results.size()) + " distinct results over " +
             std::to_string(e.initial.size()) + " beliefs on " +
             std::to_string(e.initial.Degrees().size()) + " ranks";
  return o;
}

// }}}
// {{{ 4. prover against truth tables

Outcome ProverOracle() {
  Outcome o;
  Prover prover;
  long checks = 0;
  auto check = [&](const std::vector<Formula>& fs, const Formula& goal) {
    ++checks;
    const bool consistent = oracle::Consistent(fs);
    const Verdict v = prover.IsConsistent(fs);
    o.Check(v == (consistent ? Verdict::kConsistent : Verdict::kInconsistent),
            "isConsistent " + Show(fs));
    const bool entails = oracle::Entails(fs, goal);
    const Answer a = prover.Entails(fs, goal);
    o.Check(a == (entails ? Answer::kYes : Answer::kNo),
            "entails " + Show(fs) + " |= " + Print(goal));
  };

  // Exhaustive part: every literal set over four atoms, and every set of at
  // most two depth-one formulae over two atoms.
  std::vector<Formula> literals;
  for (const char* atom : {"a", "b", "c", "d"}) {
    literals.push_back(Parse(atom));
    literals.push_back(Formula::Not(Parse(atom)));
  }
  for (unsigned mask = 1; mask < (1u << literals.size()); ++mask) {
    if (std::popcount(mask) > 5) continue;
    std::vector<Formula> fs;
    for (std::size_t i = 0; i < literals.size(); ++i) {
      if (mask & (1u << i)) fs.push_back(literals[i]);
    }
    for (const Formula& goal : literals) check(fs, goal);
  }
  std::vector<Formula> small;
  std::vector<Formula> lits2 = {Parse("a"), Parse("-a"), Parse("b"),
                                Parse("-b")};
  small = lits2;
  for (const Formula& x : lits2) {
    for (const Formula& y : lits2) {
      small.push_back(Formula::And(x, y));
      small.push_back(Formula::Or(x, y));
      small.push_back(Formula::Implies(x, y));
    }
  }
  for (std::size_t i = 0; i < small.size(); ++i) {
    for (const Formula& goal : small) check({small[i]}, goal);
    for (std::size_t j = i + 1; j < small.size(); ++j) {
      for (const Formula& goal : small) check({small[i], small[j]}, goal);
    }
  }
  const long exhaustive = checks;

  gen::Rng rng(4004);
  for (int i = 0; i < 500; ++i) {
    const int n = 1 + static_cast<int>(rng() % 4);
    std::vector<Formula> fs;
    for (int k = 0; k < n; ++k) fs.push_back(gen::Propositional(rng, 4, 3));
    check(fs, gen::Propositional(rng, 4, 3));
  }
  o.detail = std::to_string(exhaustive) + " exhaustive and 500 random cases";
  return o;
}

// }}}
// {{{ 5. minimal inconsistent subsets

Outcome MinimalSubsets() {
  Outcome o;
  gen::Rng rng(5005);
  Prover prover;
  for (int i = 0; i < 200; ++i) {
    const int atoms = 2 + static_cast<int>(rng() % 3);
    const int n = 1 + static_cast<int>(rng() % 8);
    std::vector<Formula> cands;
    for (int k = 0; k < n; ++k) cands.push_back(gen::Propositional(rng, atoms, 2));
    std::vector<Formula> ctx;
    if (rng() % 2) ctx.push_back(SatisfiableFormula(rng, atoms, 1));
    auto want = oracle::Mis(cands, ctx);
    for (MisMethod m : {MisMethod::kEnumerate, MisMethod::kMarco}) {
      MisResult got = prover.MinimalInconsistentSubsets(cands, ctx, m);
      o.Check(got.complete && got.subsets == want,
              std::string(m == MisMethod::kMarco ? "marco" : "enumeration") +
                  " on " + Show(cands) + " with " + Show(ctx));
    }
  }
  o.detail = "200 instances, enumeration and MARCO";
  return o;
}

// }}}
// {{{ 6. Horn chains

Outcome HornChains() {
  Outcome o;
  auto chain = [](int n) {
    std::vector<Formula> fs{Parse("p0")};
    for (int i = 0; i < n; ++i) {
      fs.push_back(Parse("p" + std::to_string(i) + "->p" + std::to_string(i + 1)));
    }
    return fs;
  };
  // Best of nine timings of `reps` fresh-prover queries, per query.
  auto time = [](const std::vector<Formula>& fs, const Formula& goal) {
    double best = 1e9;
    const int reps = 40;
    for (int trial = 0; trial < 9; ++trial) {
      const auto start = Clock::now();
      for (int r = 0; r < reps; ++r) {
        Prover p;
        p.EntailsHorn(fs, goal);
      }
      best = std::min(best, Seconds(start) / reps);
    }
    return best;
  };
  std::vector<double> times;
  std::ostringstream detail;
  for (int n : {200, 400, 800}) {
    std::vector<Formula> fs = chain(n);
    const Formula goal = Parse("p" + std::to_string(n));
    const Formula missing = Parse("q");
    Prover p;
    o.Check(p.EntailsHorn(fs, goal) == Answer::kYes, "horn misses p" + std::to_string(n));
    o.Check(p.Entails(fs, goal) == Answer::kYes, "general misses p" + std::to_string(n));
    o.Check(p.EntailsHorn(fs, missing) == Answer::kNo, "horn derives q");
    o.Check(p.Entails(fs, missing) == Answer::kNo, "general derives q");
    times.push_back(time(fs, goal));
    detail << n << ":" << static_cast<long>(times.back() * 1e6) << "us ";
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double ratio = times[i] / times[i - 1];
    detail << "x" << std::to_string(ratio).substr(0, 4) << " ";
    o.Check(ratio <= 3, "doubling ratio " + std::to_string(ratio));
  }
  o.detail = detail.str();
  return o;
}

// }}}
// {{{ 7. recovery

Outcome Recovery() {
  Outcome o;
  gen::Rng rng(7007);
  Prover prover;
  int restored = 0, skipped = 0;
  for (int i = 0; i < 100; ++i) {
    const int atoms = 2 + static_cast<int>(rng() % 5);
    Ranking r = ConsistentRanking(rng, 10, 4, atoms, 2);
    const auto& bs = r.beliefs();
    Formula a = Formula::Not(bs[rng() % bs.size()].formula);
    if (!oracle::Consistent(std::vector<Formula>{a})) a = Input(rng, r, atoms);
    StrategyConfig cfg = With(kAllStrategies[i % kAllStrategies.size()]);
    cfg.recovery = true;
    RevisionOutcome out = Revise(r, a, std::nullopt, cfg, Placement::kBottom,
                                 prover);
    std::set<Formula> after = AsSet(out.after);
    for (const Belief& b : out.removed) {
      Formula weakened =
          Parse("(" + Print(b.formula) + ")|(" + Print(a) + ")");
      if (oracle::Tautology(weakened)) {
        ++skipped;
        o.Check(!after.contains(weakened), "tautology kept: " + Print(weakened));
      } else {
        ++restored;
        o.Check(after.contains(weakened), "missing " + Print(weakened) +
                                              " after revising " + Show(r) +
                                              " by " + Print(a));
      }
    }
    for (const Formula& f : after) {
      o.Check(!oracle::Tautology(f), "tautology in result: " + Print(f));
    }
  }
  o.detail = std::to_string(restored) + " weakened beliefs restored, " +
             std::to_string(skipped) + " tautologies skipped";
  return o;
}

// }}}
// {{{ 8. half-life

Outcome HalfLife() {
  Outcome o;
  gen::Rng rng(8008);
  Prover prover;
  const Degree half(1, 2);
  int checked = 0;
  for (int i = 0; i < 100; ++i) {
    const int atoms = 2 + static_cast<int>(rng() % 5);
    Ranking r = ConsistentRanking(rng, 10, 4, atoms, 2);
    StrategyConfig cfg = With(kAllStrategies[i % kAllStrategies.size()]);
    cfg.half_life = half;
    Session s("halving", r, cfg);
    Formula a = Input(rng, r, atoms);
    RevisionOutcome out = s.Revise(a, RandomDegree(rng), prover);
    o.Check(out.decay_applied && *out.decay_applied == half, "no decay");
    for (const Belief& b : out.normalized.beliefs()) {
      const Degree want = b.degree * half;
      std::optional<Degree> got = s.current().Find(b.formula);
      if (want < DefaultEvaporationFloor()) {
        o.Check(!got, "did not evaporate: " + Print(b.formula));
        continue;
      }
      ++checked;
      o.Check(got && *got == want,
              Print(b.formula) + ": " + b.degree.ToString() + " became " +
                  (got ? got->ToString() : "nothing"));
    }
    o.Check(s.current().size() <= out.normalized.size(), "beliefs appeared");
  }
  o.detail = std::to_string(checked) + " degrees halved exactly";
  return o;
}

// }}}
// {{{ 9. Tweety

Outcome Tweety() {
  Outcome o;
  const Formula bird = Parse("Bird(tweety)");
  const Formula flies = Parse("*X(Bird(X)->Flies(X))");
  const Formula penguins = Parse("*X(Penguin(X)->-Flies(X))");
  const Formula penguin = Parse("Penguin(tweety)");
  Ranking r{{bird, Degree(8, 10)}, {flies, Degree(6, 10)},
            {penguins, Degree(9, 10)}};
  Prover prover;
  RevisionOutcome out = Revise(r, penguin, Degree(7, 10), With(Strategy::kMaxi),
                               Placement::kBottom, prover);
  o.Check(out.removed.size() == 1 && out.removed[0].formula == flies,
          "removed " + std::to_string(out.removed.size()) + " beliefs");
  o.Check(prover.Entails(out.after.Formulas(), Parse("-Flies(tweety)")) ==
              Answer::kYes,
          "-Flies(tweety) not entailed");

  // The same base grounded on its only constant, solved by subset search.
  std::map<Formula, Formula> ground{{bird, Parse("bird")},
                                    {flies, Parse("bird->flies")},
                                    {penguins, Parse("penguin->-flies")},
                                    {penguin, Parse("penguin")}};
  Ranking g;
  for (const Belief& b : r.beliefs()) g.Insert(ground.at(b.formula), b.degree);
  g.Insert(ground.at(penguin), Degree(7, 10));
  std::set<Formula> kept = oracle::Maxi(g, ground.at(penguin));
  std::set<Formula> engine;
  for (const Formula& f : out.after.Formulas()) engine.insert(ground.at(f));
  o.Check(kept == engine, "oracle disagrees");
  o.Check(oracle::Entails(std::vector<Formula>(kept.begin(), kept.end()),
                          Parse("-flies")),
          "oracle result does not entail -flies");
  o.detail = "removed " + (out.removed.empty() ? std::string("nothing")
                                               : Print(out.removed[0].formula));
  return o;
}

// }}}
// {{{ 10. integration

Outcome Integration() {
  Outcome o;
  gen::Rng rng(10010);
  Prover prover;
  int conflicts = 0;
  for (int i = 0; i < 100; ++i) {
    const int clashes = 1 + static_cast<int>(rng() % 3);
    Ranking x, y;
    std::vector<std::pair<Formula, Formula>> winners;
    for (int k = 0; k < clashes; ++k) {
      Formula lit = Parse("c" + std::to_string(k));
      if (rng() % 2) lit = Formula::Not(lit);
      const Formula neg = Complement(lit);
      std::int64_t dx = 1 + static_cast<std::int64_t>(rng() % 9);
      std::int64_t dy = 1 + static_cast<std::int64_t>(rng() % 9);
      if (dx == dy) dy = dx == 9 ? 8 : dx + 1;
      x.Insert(lit, Degree(dx, 10));
      y.Insert(neg, Degree(dy, 10));
      winners.push_back(dx > dy ? std::pair{lit, neg} : std::pair{neg, lit});
    }
    // Unrelated beliefs on disjoint atoms.
    for (int k = 0; k < 3; ++k) {
      x.Insert(Parse("x" + std::to_string(k) + "|x" + std::to_string(k + 1)),
               Degree(1 + static_cast<std::int64_t>(rng() % 9), 10));
      y.Insert(Parse("y" + std::to_string(k) + "->y" + std::to_string(k + 1)),
               Degree(1 + static_cast<std::int64_t>(rng() % 9), 10));
    }
    std::vector<Formula> both = x.Formulas();
    for (const Formula& f : y.Formulas()) both.push_back(f);
    o.Check(oracle::Consistent(x.Formulas()) && oracle::Consistent(y.Formulas()) &&
                !oracle::Consistent(both),
            "bad instance");
    std::vector<Ranking> pair{x, y};
    ExtractionResult out = Integrate(pair, With(Strategy::kMaxi), prover);
    o.Check(oracle::Consistent(out.ranking.Formulas()), "inconsistent result");
    for (const auto& [win, lose] : winners) {
      ++conflicts;
      o.Check(out.ranking.Contains(win) && !out.ranking.Contains(lose),
              "lost " + Print(win) + " in " + Show(x) + "+ " + Show(y));
    }
  }
  o.detail = std::to_string(conflicts) + " conflicts over 100 pairs";
  return o;
}

// }}}
// {{{ 11. round trips

Outcome RoundTrips() {
  Outcome o;
  gen::Rng rng(11011);
  for (int i = 0; i < 1000; ++i) {
    Formula f = i % 2 ? gen::FirstOrder(rng, 4) : gen::Propositional(rng, 6, 4);
    const std::string text = Print(f);
    try {
      o.Check(Parse(text) == f, "parse(print) differs for " + text);
    } catch (const Error& e) {
      o.Check(false, text + ": " + e.what());
    }
  }
  const auto dir = std::filesystem::temp_directory_path() / "saten_acceptance";
  std::filesystem::create_directories(dir);
  for (int i = 0; i < 100; ++i) {
    Ranking r;
    const int n = 1 + static_cast<int>(rng() % 8);
    for (int k = 0; k < n; ++k) {
      Formula f = k % 2 ? gen::FirstOrder(rng, 3) : gen::Propositional(rng, 5, 3);
      if (!r.Contains(f)) {
        r.Insert(f, Degree(1 + static_cast<std::int64_t>(rng() % 96), 97));
      }
    }
    const auto path = dir / ("r" + std::to_string(i) + ".rk");
    SaveRanking(r, path);
    o.Check(LoadRanking(path) == r, "file round trip: " + Show(r));

    OrdinalRanking ord;
    std::set<Formula> used;
    const int ranks = 1 + static_cast<int>(rng() % 5);
    for (int k = 0; k < ranks; ++k) {
      std::vector<Formula> rank;
      const int size = 1 + static_cast<int>(rng() % 3);
      for (int m = 0; m < size; ++m) {
        Formula f = gen::Propositional(rng, 6, 2);
        if (used.insert(f).second) rank.push_back(f);
      }
      if (!rank.empty()) ord.ranks.push_back(rank);
    }
    o.Check(ToOrdinal(FromOrdinal(ord)) == ord, "ordinal round trip");
  }
  std::filesystem::remove_all(dir);
  o.detail = "1000 formulae, 100 files, 100 ordinal rankings";
  return o;
}

// }}}

}  // namespace
}  // namespace saten

int main() {
  using namespace saten;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"postulates", Postulates},     {"equivalences", Equivalences},
      {"contrast example", Contrast}, {"prover oracle", ProverOracle},
      {"minimal subsets", MinimalSubsets},
      {"horn chains", HornChains},    {"recovery", Recovery},
      {"half-life", HalfLife},        {"tweety", Tweety},
      {"integration", Integration},   {"round trips", RoundTrips},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failed;
    std::printf("%s %2zu %-18s %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, o.detail.c_str());
    for (const std::string& f : o.failures) std::printf("       %s\n", f.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed ? 1 : 0;
}
