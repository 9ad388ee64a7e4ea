#include <doctest.h>

#include "hcouple/transmono.hpp"

using namespace hcouple;

namespace {

TransMonomial expOf(const TransMonomial& m, const ScalarValue& c = ScalarValue(1)) {
  return TransMonomial::exp(MultiSeries::single(m, c));
}

const TransMonomial x = TransMonomial::x();
const TransMonomial ex = expOf(x);                  // e^x
const TransMonomial eex = expOf(ex);                // e^{e^x}

} // namespace

TEST_CASE("monomial order: pure towers and exponentials") {
  CHECK(monoCompare(x, TransMonomial{}) == Ordering::GT);
  CHECK(monoCompare(TransMonomial::x(ScalarValue(-1)), TransMonomial{}) == Ordering::LT);
  CHECK(monoCompare(TransMonomial::x(ScalarValue(2)), x) == Ordering::GT);
  CHECK(monoCompare(TransMonomial::ell(1), x) == Ordering::LT);
  CHECK(monoCompare(x, TransMonomial::ell(1, ScalarValue(100))) == Ordering::GT);
  CHECK(monoCompare(ex, x) == Ordering::GT);
  CHECK(monoCompare(expOf(x, ScalarValue(1)), expOf(x, ScalarValue(2))) == Ordering::LT);
  CHECK(monoCompare(eex, ex) == Ordering::GT);
}

TEST_CASE("exp folds its single-log terms back into powers") {
  // exp(q * l_{k+1}) = l_k^q, so exp(l1) is literally x
  const TransMonomial viaExp = TransMonomial::exp(MultiSeries::single(TransMonomial::ell(1), ScalarValue(1)));
  CHECK(viaExp == x);
  const TransMonomial halfPower =
      TransMonomial::exp(MultiSeries::single(TransMonomial::ell(1), ScalarValue(Rational(1, 2))));
  CHECK(halfPower == TransMonomial::x(ScalarValue(Rational(1, 2))));
  // a mixed argument folds its foldable part and keeps the rest
  MultiSeries arg = MultiSeries::single(TransMonomial::ell(1), ScalarValue(3));
  arg = arg.plus(MultiSeries::single(ex, ScalarValue(1)));
  const TransMonomial m = TransMonomial::exp(arg);
  CHECK(m.logPart().at(0) == ScalarValue(3));
  CHECK(m.hasExpArg());
  CHECK(m.expArg().size() == 1);
}

TEST_CASE("exp rejects small arguments and over-tall towers") {
  CHECK_THROWS_AS(expOf(TransMonomial::x(ScalarValue(-1))), FormatError);
  CHECK_THROWS_AS(TransMonomial::exp(MultiSeries::single(TransMonomial{}, ScalarValue(2))),
                  FormatError);
  const TransMonomial h3 = expOf(eex); // height 3: at the default bound
  CHECK(h3.height() == 3);
  CHECK_THROWS_AS(expOf(h3), HeightExceeded);
}

TEST_CASE("logarithmic derivatives of the worked monomials") {
  CHECK(daggerM(eex) == MultiSeries::single(ex, ScalarValue(1)));
  // (e^{b e^{cx}})-dagger = b c e^{cx}
  const ScalarValue b{Rational(3, 2)};
  const ScalarValue c{Rational(2)};
  const TransMonomial ecx = expOf(x, c);
  CHECK(daggerM(TransMonomial::exp(MultiSeries::single(ecx, b))) ==
        MultiSeries::single(ecx, b * c));
  // l1-dagger = (x l1)^{-1}
  const TransMonomial xl1inv =
      TransMonomial::ell(0, ScalarValue(-1)).times(TransMonomial::ell(1, ScalarValue(-1)));
  CHECK(daggerM(TransMonomial::ell(1)) == MultiSeries::single(xl1inv, ScalarValue(1)));
}

TEST_CASE("cancellation survives only through full exact combination") {
  // (x e^x)-dagger = 1 + 1/x: the constant term must not be lost
  const TransMonomial m = x.times(ex);
  const MultiSeries d = daggerM(m);
  CHECK(d.size() == 2);
  CHECK(d.leadingMonomial() == TransMonomial{});
  CHECK(psiMonomial(m) == TransMonomial{});
}

TEST_CASE("psi-monomials of the fixed point and the towers") {
  const TransMonomial xinv = TransMonomial::x(ScalarValue(-1));
  CHECK(psiMonomial(xinv) == xinv); // the normalization 1 = v(x^{-1})
  CHECK(psiMonomial(x) == xinv);
  CHECK(psiMonomial(eex) == ex);
  CHECK_THROWS_AS(psiMonomial(TransMonomial{}), ZeroDagger);
}

TEST_CASE("archimedean classes of values via class keys") {
  const TransMonomial e2x = expOf(x, ScalarValue(2));
  CHECK(archClassCompareM(expOf(ex), expOf(e2x)) == Ordering::LT);
  CHECK(archClassCompareM(x, TransMonomial::x(ScalarValue(2))) == Ordering::EQ);
  CHECK(archClassCompareM(TransMonomial::ell(1), x) == Ordering::LT);
  CHECK(archClassCompareM(TransMonomial{}, x) == Ordering::LT); // zero class smallest
}

TEST_CASE("value arithmetic mirrors the monomial group") {
  const TransValue vx = TransValue::of(x);            // v(x) < 0
  CHECK(transSignum(vx) == -1);
  CHECK(transSignum(TransValue::unit()) == 1);
  CHECK((vx + (-vx)).isZero());
  CHECK(transCompare(vx, TransValue::zero()) == Ordering::LT);
  const auto q = transColon(TransValue::of(TransMonomial::x(ScalarValue(3))), vx);
  CHECK(q == std::optional<ScalarValue>(ScalarValue(3)));
  CHECK_FALSE(transColon(TransValue::of(x), TransValue::of(TransMonomial::ell(1))).has_value());
}

TEST_CASE("integration on monomial values") {
  CHECK(integrateT(TransValue::zero()).mono == x);
  CHECK(integrateT(TransValue::unit()).mono == TransMonomial::ell(1));
  // integrating v(e^{e^x}) lands at v(e^{e^x - x})
  const TransValue g = TransValue::of(eex);
  const TransValue a = integrateT(g);
  MultiSeries arg = MultiSeries::single(ex, ScalarValue(1));
  arg = arg.plus(MultiSeries::single(x, ScalarValue(-1)));
  CHECK(a.mono == TransMonomial::exp(arg));
  CHECK(transCompare(a + *psiT(a), g) == Ordering::EQ);
}

TEST_CASE("the cut by integral sign") {
  CHECK(cutMemberT(TransValue::unit()));
  CHECK_FALSE(cutMemberT(TransValue::unit().scaled(ScalarValue(2))));
  CHECK(cutMemberT(TransValue::zero()));
}

TEST_CASE("monomial syntax round-trips") {
  const char* fixtures[] = {
      "x",
      "x^(3/2) * l1^(-1) * exp(2*exp(x) - x)",
      "l2^4",
      "exp(exp(x))",
      "x^(-1)",
      "exp(3*exp(2*x) + l1^2)",
  };
  for (const char* text : fixtures) {
    const TransMonomial m = parseMonomial(text);
    CHECK(parseMonomial(printMonomial(m)) == m);
  }
  // canonical printing is stable
  const TransMonomial m = parseMonomial("x^(3/2) * l1^(-1) * exp(2*exp(x) - x)");
  CHECK(printMonomial(parseMonomial(printMonomial(m))) == printMonomial(m));
  CHECK_THROWS_AS(parseMonomial("y"), SyntaxError);
  CHECK_THROWS_AS(parseMonomial("exp(x"), SyntaxError);
}
