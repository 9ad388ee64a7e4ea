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

TEST_CASE("integration inside the stage needs no extension") {
  ClosureEngine e(Presentation::seedP1());
  CHECK(e.integrate(VecElement()) == vec({{"b1", -1}}));
  CHECK(e.integrate(vec({{"b1", -2}})) == vec({{"b1", -3}}));
  CHECK(e.stage().ctx().size() == 1);
}

TEST_CASE("integrating max Psi grows the stage by exactly one class") {
  ClosureEngine e(Presentation::seedP1());
  const VecElement alpha = e.integrate(vec({{"b1", 1}}));
  CHECK(alpha == vec({{"b2", -1}}));
  CHECK(e.stage().ctx().size() == 2);
  CHECK(e.stage().derive(ExtVec(alpha)) == ExtVec(vec({{"b1", 1}})));
  CHECK(e.history().size() == 1);
  CHECK(e.history().back().adjoinedBasisId == "b2");
}

TEST_CASE("psi preimages: table hit, fresh class, and the cut guard") {
  ClosureEngine e(Presentation::seedP1());
  CHECK(e.psiPreimage(vec({{"b1", 1}})) == vec({{"b1", 1}}));
  const VecElement half = vec({{"b1", 1}}).scaled(ScalarValue(Rational(1, 2)));
  const VecElement u = e.psiPreimage(half);
  CHECK(u.signum(e.stage().ctx()) > 0);
  CHECK(e.stage().psi(ExtVec(u)) == ExtVec(half));
  CHECK_THROWS_AS(e.psiPreimage(vec({{"b1", 2}})), NotInCut);
}

TEST_CASE("query caching returns the identical answer without new history") {
  ClosureEngine e(Presentation::seedP1());
  const VecElement a1 = e.integrate(vec({{"b1", 1}}));
  const std::size_t steps = e.history().size();
  const VecElement a2 = e.integrate(vec({{"b1", 1}}));
  CHECK(a1 == a2);
  CHECK(e.history().size() == steps);
}

TEST_CASE("stages stay grounded and normalized with P as the psi-downset") {
  std::mt19937_64 rng(43);
  ClosureEngine e(Presentation::seedP1());
  for (int q = 0; q < 40; ++q) {
    e.integrate(fuzz::randomElement(e.stage(), rng));
    const Presentation& st = e.stage();
    REQUIRE(st.validateAxioms().ok);
    CHECK(st.cut().kind == CutKind::PsiDown);
    CHECK(st.classifyTrichotomy().kind == TrichotomyKind::Grounded);
    CHECK(st.psi(ExtVec(st.unit())) == ExtVec(st.unit()));
  }
}

TEST_CASE("each stage embeds into the next and the cut restricts correctly") {
  std::mt19937_64 rng(47);
  ClosureEngine e(Presentation::seedP1());
  for (int step = 0; step < 5; ++step) {
    const Presentation before = e.stage();
    std::vector<VecElement> samples;
    for (int s = 0; s < 30; ++s)
      samples.push_back(fuzz::randomElement(before, rng));
    e.integrate(before.maxPsi()); // forces one extension
    const Presentation& after = e.stage();
    for (const auto& a : samples) {
      CHECK(before.cutMember(a) == after.cutMember(a));
      CHECK(before.psi(ExtVec(a)) == after.psi(ExtVec(a)));
    }
    // Psi grows strictly at the top
    CHECK(vecCompare(before.maxPsi(), after.maxPsi(), after.ctx()) == Ordering::LT);
  }
}

TEST_CASE("a corrupted stage surfaces the invariant violation loudly") {
  // psi-values b1 and 2 b1 share the top class, so b1 + b2 has no
  // integral and is not max Psi: the engine must refuse to patch this
  const Presentation corrupted(BasisContext({"b1", "b2"}),
                               PsiTable{{"b1", vec({{"b1", 1}})}, {"b2", vec({{"b1", 2}})}},
                               HCutSpec::psiDown(), vec({{"b1", 1}}));
  REQUIRE_FALSE(corrupted.validateAxioms().ok);
  ClosureEngine e = ClosureEngine::unchecked(corrupted);
  CHECK_THROWS_AS(e.integrate(vec({{"b1", 1}, {"b2", 1}})), InternalInvariantViolation);
}

TEST_CASE("histories replay to byte-identical stages") {
  std::mt19937_64 rng(53);
  ClosureEngine e(Presentation::seedP1());
  for (int q = 0; q < 25; ++q) {
    if (q % 3 == 0)
      e.integrate(e.stage().maxPsi());
    else
      e.integrate(fuzz::randomElement(e.stage(), rng));
  }
  const Json log = e.historyToJson();
  ClosureEngine replayed = ClosureEngine::replay(Presentation::seedP1(), log);
  CHECK(presentationToString(replayed.stage()) == presentationToString(e.stage()));
  CHECK(replayed.historyToJson().dump() == log.dump());
}

TEST_CASE("definable closure criterion tracks asymptotic integration") {
  CHECK_FALSE(isDefinablyClosedCriterion(presentationP2()));
  CHECK_FALSE(isDefinablyClosedCriterion(Presentation(BasisContext(std::vector<BasisId>{}),
                                                      PsiTable{}, HCutSpec::psiDown(),
                                                      VecElement())));
  CHECK(isDefinablyClosedCriterion(LogModel{}));
  CHECK(isDefinablyClosedCriterion(TransModel{}));
  CHECK_FALSE(isDefinablyClosedCriterion(GapLogModel{}));
  CHECK_FALSE(isDefinablyClosedCriterion(PresentationModel{presentationP2()}));
}
