// Acceptance gate: drives every numbered criterion at full scale and
// prints one verdict line per criterion. Exits nonzero if any fails.

#include <cstdlib>
#include <iostream>
#include <string>

#include "hcouple/fuzz.hpp"

int main(int argc, char** argv) {
  using hcouple::fuzz::SuiteResult;
  std::uint64_t seed = 20240809;
  if (argc > 1)
    seed = std::strtoull(argv[1], nullptr, 10);

  struct Criterion {
    int number;
    std::string what;
    SuiteResult result;
    double timeLimit; // seconds; 0 = untimed
  };

  std::vector<Criterion> criteria;
  criteria.push_back({1,
                      "axiom suite: AC2/AC3/HC, Hahn reduction and psi-contraction on 10^4 "
                      "fuzzed presentation samples, zero violations",
                      hcouple::fuzz::axiomSuite(seed + 1, 10000), 60.0});
  criteria.push_back({2,
                      "extension postconditions: 10^3 constructor applications revalidate with "
                      "exact predicted Psi-sets and sound embeddings",
                      hcouple::fuzz::extensionSuite(seed + 2, 1000), 0.0});
  criteria.push_back({3,
                      "closure engine: 10^3 query sequences terminate, answers persist in the "
                      "final stage, first five stages embed into the log couple",
                      hcouple::fuzz::closureSuite(seed + 3, 1000), 0.0});
  criteria.push_back({4,
                      "log-monomial certificates: exact integration on 10^4 elements, the three "
                      "worked integrals, the gap squeeze and denseness",
                      hcouple::fuzz::logModelSuite(seed + 4, 10000), 0.0});
  criteria.push_back({5,
                      "zero-set example: tower ranks up to 6 and psi of e^{b e^{cx}} at twenty "
                      "parameter pairs",
                      hcouple::fuzz::transExampleSuite(seed + 5, 10000), 10.0});
  criteria.push_back({6,
                      "classifier: the tower fixture is case (d)_1 with all lemma items, the "
                      "gap fixture is case (a), interval certification holds",
                      hcouple::fuzz::classifierSuite(seed + 6), 0.0});
  criteria.push_back({7,
                      "monotone solver: strict monotonicity on 10^4 pairs and 10^3 exact round "
                      "trips over the log couple and closure stages",
                      hcouple::fuzz::solverSuite(seed + 7, 10000, 1000), 0.0});
  criteria.push_back({8,
                      "language layer: all fourteen default equations, the recorded-truth "
                      "corpus, and verified-only witnesses",
                      hcouple::fuzz::langSuite(seed + 8), 0.0});
  criteria.push_back({9,
                      "scalar extension: Psi and trichotomy preserved, separation of new "
                      "elements on 10^3 samples",
                      hcouple::fuzz::scalarExtensionSuite(seed + 9, 1000), 0.0});

  bool allPassed = true;
  for (auto& c : criteria) {
    bool ok = c.result.passed;
    std::string detail = std::to_string(c.result.cases) + " cases, " +
                         std::to_string(c.result.seconds) + "s";
    if (c.timeLimit > 0.0 && c.result.seconds > c.timeLimit) {
      ok = false;
      detail += " (over the " + std::to_string(c.timeLimit) + "s budget)";
    }
    std::cout << "criterion " << c.number << ": " << (ok ? "PASS" : "FAIL") << " — " << c.what
              << " [" << detail << "]\n";
    for (const auto& f : c.result.failures)
      std::cout << "    failure: " << f << "\n";
    allPassed = allPassed && ok;
  }
  std::cout << (allPassed ? "all acceptance criteria passed\n"
                          : "ACCEPTANCE FAILED: see the lines above\n");
  return allPassed ? 0 : 1;
}
