#ifndef HCOUPLE_FUZZ_HPP
#define HCOUPLE_FUZZ_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hcouple/analysis.hpp"
#include "hcouple/extend.hpp"

namespace hcouple::fuzz {

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::vector<std::string> failures; // capped at a handful of messages
  double seconds = 0.0;

  void fail(const std::string& why) {
    passed = false;
    if (failures.size() < 8)
      failures.push_back(why);
  }
};

/// Uniformly samples a valid normalized presentation with up to
/// `maxClasses` classes: the unit spans the top class and each ψ-value
/// adds a positive increment one class down, which realizes every
/// axiom by construction. Roughly a quarter of the draws use Q(sqrt 2)
/// scalars.
Presentation randomPresentation(Rng& rng, std::size_t maxClasses = 6, bool allowQuad = true);

VecElement randomElement(const Presentation& p, Rng& rng);

// The property suites behind `hcouple fuzz` and the acceptance gate.
// Each drives the listed criterion at full scale when `cases` is left
// at its default.
SuiteResult axiomSuite(std::uint64_t seed, std::size_t cases = 10000);
SuiteResult extensionSuite(std::uint64_t seed, std::size_t cases = 1000);
SuiteResult closureSuite(std::uint64_t seed, std::size_t sequences = 1000);
SuiteResult logModelSuite(std::uint64_t seed, std::size_t cases = 10000);
SuiteResult transExampleSuite(std::uint64_t seed, std::size_t axiomSamples = 10000);
SuiteResult classifierSuite(std::uint64_t seed);
SuiteResult solverSuite(std::uint64_t seed, std::size_t pairs = 10000, std::size_t roundTrips = 1000);
SuiteResult langSuite(std::uint64_t seed);
SuiteResult scalarExtensionSuite(std::uint64_t seed, std::size_t cases = 1000);

std::vector<SuiteResult> runAllSuites(std::uint64_t seed, double scale = 1.0);

} // namespace hcouple::fuzz

#endif
