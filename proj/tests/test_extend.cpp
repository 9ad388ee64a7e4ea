#include <doctest.h>

#include <random>

#include "hcouple/fuzz.hpp"
#include "hcouple/model.hpp"

using namespace hcouple;

namespace {

VecElement vec(std::initializer_list<std::pair<const char*, long>> coeffs) {
  VecElement v;
  for (const auto& [id, c] : coeffs)
    v = v.withCoeff(id, ScalarValue(c));
  return v;
}

} // namespace

TEST_CASE("extendGrounded builds the chain P1 -> P2 -> P3") {
  const Presentation p1 = Presentation::seedP1();
  const ExtensionResult e2 = extendGrounded(p1);
  CHECK(e2.newBasisId == "b2");
  CHECK(e2.adjoinedElement == vec({{"b2", -1}}));
  CHECK(e2.extended.psiTable().at("b2") == vec({{"b1", 1}, {"b2", 1}}));
  CHECK(e2.extended.derive(ExtVec(e2.adjoinedElement)) == ExtVec(vec({{"b1", 1}})));

  const ExtensionResult e3 = extendGrounded(e2.extended);
  CHECK(e3.extended.psiTable().at("b3") == vec({{"b1", 1}, {"b2", 1}, {"b3", 1}}));
  CHECK(e3.extended.derive(ExtVec(vec({{"b3", -1}}))) == ExtVec(vec({{"b1", 1}, {"b2", 1}})));

  // old psi-values survive pointwise
  for (const auto& [id, v] : p1.psiTable())
    CHECK(e2.extended.psiTable().at(id) == v);

  const Presentation trivial(BasisContext(std::vector<BasisId>{}), PsiTable{}, HCutSpec::psiDown(),
                             VecElement());
  CHECK_THROWS_AS(extendGrounded(trivial), TrivialCouple);
}

TEST_CASE("insertClass between two classes realizes the accepted instance") {
  const Presentation p2 = presentationP2();
  const VecElement beta = vec({{"b1", 1}}).withCoeff("b2", ScalarValue(Rational(1, 2)));
  const ExtensionResult ext = insertClass(p2, 1, beta);
  CHECK(ext.extended.ctx().order() == std::vector<BasisId>{"b1", "b3", "b2"});
  CHECK(ext.extended.psiTable().at("b3") == beta);
  CHECK(ext.extended.validateAxioms().ok);

  // psi of mixed elements follows min(psi(gamma), beta)
  const VecElement mixedHigh = vec({{"b1", 2}, {"b3", 5}});
  CHECK(ext.extended.psi(ExtVec(mixedHigh)) == ExtVec(vec({{"b1", 1}})));
  const VecElement mixedLow = vec({{"b3", 5}, {"b2", 7}});
  CHECK(ext.extended.psi(ExtVec(mixedLow)) == ExtVec(beta));
}

TEST_CASE("insertClass rejects a repeated psi-value and broken inequalities") {
  const Presentation p2 = presentationP2();
  // beta already a psi-value: Hahn type forbids it
  CHECK_THROWS_AS(insertClass(p2, 2, vec({{"b1", 1}, {"b2", 1}})), HypothesisViolation);
  // below-all insertion would need beta >= max Psi and still below
  // (Gamma^>)', which no finitely presented element satisfies
  CHECK_THROWS_AS(insertClass(p2, 2, vec({{"b1", 1}, {"b2", 2}})), HypothesisViolation);
  // order hypothesis broken: beta below a class that must stay below it
  CHECK_THROWS_AS(insertClass(p2, 1, vec({{"b1", 2}})), HypothesisViolation);
}

TEST_CASE("adjoinPsiValue picks the slot forced by order reversal") {
  const Presentation p1 = Presentation::seedP1();
  const VecElement half = vec({{"b1", 1}}).scaled(ScalarValue(Rational(1, 2)));
  const ExtensionResult ext = adjoinPsiValue(p1, half);
  // a new top class: psi-values now 1/2 b1 < b1
  CHECK(ext.extended.ctx().order().front() == ext.newBasisId);
  CHECK(ext.extended.psiTable().at(ext.newBasisId) == half);
  CHECK(ext.extended.psi(ExtVec(ext.adjoinedElement)) == ExtVec(half));
  CHECK(ext.adjoinedElement.signum(ext.extended.ctx()) > 0);

  CHECK_THROWS_AS(adjoinPsiValue(p1, vec({{"b1", 1}})), AlreadyPsiValue);
  CHECK_THROWS_AS(adjoinPsiValue(p1, vec({{"b1", 2}})), NotInCut);
}

TEST_CASE("removing the zero gap of the trivial couple bootstraps the chain") {
  const Presentation trivialGap(BasisContext(std::vector<BasisId>{}), PsiTable{},
                                HCutSpec::withGap(VecElement()), VecElement());
  const ExtensionResult ext = removeGap(trivialGap, GapRemovalSign::Negative);
  CHECK(ext.extended.validateAxioms().ok);
  CHECK(ext.extended.ctx().size() == 1);
  // alpha < 0 with alpha' = 0, and the new class is the fixed point
  CHECK(ext.adjoinedElement.signum(ext.extended.ctx()) < 0);
  CHECK(ext.extended.derive(ExtVec(ext.adjoinedElement)) == ExtVec(VecElement()));
  CHECK(ext.extended.unit() == ext.extended.psiTable().begin()->second);

  // the positive variant would put Psi below zero, which cannot carry a
  // normalized unit
  CHECK_THROWS_AS(removeGap(trivialGap, GapRemovalSign::Positive), HypothesisViolation);
  // grounded presentations never carry a gap cut
  CHECK_THROWS_AS(removeGap(Presentation::seedP1(), GapRemovalSign::Negative), NoGap);
}

TEST_CASE("scalar extension preserves the table and decides new signs") {
  const ExtensionResult ext = scalarExtend(presentationP2(), 2);
  CHECK(ext.extended.scalarFieldName() == "Q(sqrt2)");
  CHECK(ext.extended.psiTable() == presentationP2().psiTable());
  // (sqrt2 - 1) b1 > 0 by the leading-coefficient rule
  const VecElement probe = VecElement::unitVector("b1").scaled(ScalarValue::quad(-1, 1, 2));
  CHECK(probe.signum(ext.extended.ctx()) > 0);
  CHECK_THROWS_AS(scalarExtend(ext.extended, 3), UnsupportedFieldPair);
}

TEST_CASE("every constructor emits a presentation that re-validates with the predicted Psi-set") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 30; ++i) {
    const Presentation p = fuzz::randomPresentation(rng);
    const ExtensionResult ext = extendGrounded(p);
    CHECK(ext.extended.validateAxioms().ok);
    std::vector<VecElement> actual = ext.extended.psiValues();
    std::vector<VecElement> predicted = ext.predictedPsi;
    CHECK(actual == predicted);

    std::vector<VecElement> samples;
    for (int s = 0; s < 40; ++s)
      samples.push_back(fuzz::randomElement(p, rng));
    std::string why;
    CHECK_MESSAGE(verifyEmbedding(p, ext, samples, &why), why);
  }
}
