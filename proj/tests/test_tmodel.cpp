#include <doctest.h>

#include <map>
#include <random>

#include "hcouple/logmodel.hpp"
#include "hcouple/transmono.hpp"

using namespace hcouple;

namespace {

// Test-side oracle for the psi-values of the iterated-log classes:
// exponent vectors of pure monomials in l_0, l_1, ..., differentiated
// through the recursion l_0' = 1, l_k' = l_{k-1}' / l_{k-1}. The
// production code uses the closed form instead.
using ExpVec = std::map<unsigned, long>;

ExpVec oracleDerivOfEll(unsigned k) {
  ExpVec d; // l_0' = 1: empty product
  for (unsigned j = 1; j <= k; ++j) {
    // l_j' = l_{j-1}' / l_{j-1}
    --d[j - 1];
  }
  return d;
}

LogElement valueOf(const ExpVec& e) {
  LogElement v;
  for (const auto& [k, n] : e)
    if (n != 0)
      v = v + LogElement::e(k, ScalarValue(n));
  return v;
}

LogElement randomLog(std::mt19937_64& rng, unsigned maxIdx = 6) {
  std::uniform_int_distribution<unsigned> pick(0, maxIdx);
  std::uniform_int_distribution<long> c(-9, 9);
  std::uniform_int_distribution<int> width(1, 4);
  LogElement v;
  for (int t = 0, n = width(rng); t < n; ++t)
    v = v + LogElement::e(pick(rng), ScalarValue(c(rng)));
  return v;
}

} // namespace

TEST_CASE("psi of the log classes matches the differentiation oracle") {
  for (unsigned k = 0; k <= 8; ++k) {
    // l_k-dagger = l_k' / l_k as exponent arithmetic; its value is the
    // coefficient sum over the e_j
    ExpVec dagger = oracleDerivOfEll(k);
    --dagger[k];
    CHECK(psiL(LogElement::e(k)) == std::optional<LogElement>(valueOf(dagger)));
    // and it equals the stored sigma
    CHECK(LogElement::sigma(k) == valueOf(dagger));
  }
}

TEST_CASE("psi on the log model: sign conventions and class invariance") {
  CHECK_FALSE(psiL(LogElement{}).has_value());
  CHECK(psiL(LogElement::e(0, ScalarValue(-17))) == std::optional<LogElement>(LogElement::sigma(0)));
  const LogElement mixed = LogElement::e(1, 3) + LogElement::e(4, -5);
  CHECK(psiL(mixed) == std::optional<LogElement>(LogElement::sigma(1)));
  // the unit: 1 = -e0 is the unique positive fixed point
  const LogElement unit = LogElement::e(0, ScalarValue(-1));
  CHECK(unit.signum() > 0);
  CHECK(psiL(unit) == std::optional<LogElement>(unit));
}

TEST_CASE("the three worked integrals") {
  CHECK(integrateL(LogElement{}) == LogElement::e(0));
  CHECK(integrateL(-LogElement::e(0)) == LogElement::e(1));
  CHECK(integrateL(-(LogElement::e(0) + LogElement::e(1))) == LogElement::e(2));
}

TEST_CASE("integration is total with an exact postcondition") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    const LogElement gamma = randomLog(rng);
    const LogElement alpha = integrateL(gamma);
    CHECK(deriveL(alpha) == std::optional<LogElement>(gamma));
  }
}

TEST_CASE("finite-dimensional slices are discrete in the order topology") {
  // elements of span(e0..e3) keep a distance of any class-[e4] epsilon
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> c(-9, 9);
  const LogElement eps = -LogElement::e(4, ScalarValue(Rational(1, 7)));
  for (int i = 0; i < 300; ++i) {
    LogElement x, y;
    for (unsigned k = 0; k <= 3; ++k) {
      x = x + LogElement::e(k, ScalarValue(c(rng)));
      y = y + LogElement::e(k, ScalarValue(c(rng)));
    }
    if (x == y)
      continue;
    LogElement d = x - y;
    if (d.signum() < 0)
      d = -d;
    CHECK(eps < d);
  }
}

TEST_CASE("the adjoined gap sits exactly between Psi and the derivatives") {
  const GapLogElement lambda = GapLogElement::lambda();
  for (unsigned k = 0; k <= 20; ++k)
    CHECK(gapCompare(GapLogElement::pure(LogElement::sigma(k)), lambda) == Ordering::LT);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    LogElement d = randomLog(rng);
    if (d.isZero())
      continue;
    if (d.signum() < 0)
      d = -d;
    CHECK(gapCompare(lambda, GapLogElement::pure(*deriveL(d))) == Ordering::LT);
  }
}

TEST_CASE("gap classes: lambda lives in [e0] and shifts down the ladder") {
  CHECK(gapClassIndex(GapLogElement::lambda()) == 0u);
  // lambda + e0 + ... + e_j has class [e_{j+1}]
  LogElement partial;
  for (unsigned j = 0; j <= 4; ++j) {
    partial = partial + LogElement::e(j);
    const GapLogElement shifted{partial, ScalarValue(1)};
    CHECK(gapClassIndex(shifted) == j + 1);
    CHECK(psiGap(shifted) == std::optional<LogElement>(LogElement::sigma(j + 1)));
  }
  // cross-check the class rule against the order: lambda + e0 is pinched
  // between positive multiples of e1
  const GapLogElement mu{LogElement::e(0), ScalarValue(1)};
  const GapLogElement small = GapLogElement::pure(-LogElement::e(1, ScalarValue(Rational(1, 2))));
  const GapLogElement big = GapLogElement::pure(-LogElement::e(1, ScalarValue(2)));
  CHECK(gapCompare(small, mu) == Ordering::LT);
  CHECK(gapCompare(mu, big) == Ordering::LT);
}

TEST_CASE("the psi-set of the gap extension is unchanged") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> c(-5, 5);
  for (int i = 0; i < 300; ++i) {
    const GapLogElement x{randomLog(rng), ScalarValue(c(rng))};
    if (x.isZero())
      continue;
    const auto p = psiGap(x);
    REQUIRE(p.has_value());
    // every value is some sigma_j, i.e. psi of a pure element
    const unsigned j = *gapClassIndex(x);
    CHECK(*p == LogElement::sigma(j));
    CHECK(psiL(LogElement::e(j)) == p);
  }
}

TEST_CASE("denseness: pure elements approximate every mixed element") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 300; ++i) {
    const LogElement base = randomLog(rng);
    const GapLogElement mu{base, ScalarValue(3)};
    LogElement eps = randomLog(rng);
    if (eps.isZero())
      eps = LogElement::e(2);
    if (eps.signum() < 0)
      eps = -eps;
    const unsigned deep = std::max(eps.maxIndex(), base.isZero() ? 0u : base.maxIndex()) + 1;
    LogElement tail;
    for (unsigned j = 0; j <= deep; ++j)
      tail = tail + LogElement::e(j);
    const GapLogElement approx = GapLogElement::pure(base - tail.scaled(ScalarValue(3)));
    GapLogElement d = mu - approx;
    if (gapSignum(d) < 0)
      d = -d;
    CHECK(gapCompare(d, GapLogElement::pure(eps)) == Ordering::LT);
  }
}

TEST_CASE("gap removal: alpha integrates the gap and tops the new Psi-set") {
  for (const bool positive : {true, false}) {
    const GapRemovedLogModel model(positive);
    const GapRemovedElement alpha = GapRemovedElement::alpha();
    CHECK((model.signum(alpha) > 0) == positive);
    CHECK(model.compare(*model.derive(alpha), GapRemovedElement::of(GapLogElement::lambda())) ==
          Ordering::EQ);
    CHECK(model.psi(alpha) == std::optional<GapRemovedElement>(model.maxPsi()));
    // the new maximum dominates the old Psi-set
    for (unsigned k = 0; k <= 10; ++k) {
      const GapRemovedElement sigma = GapRemovedElement::of(GapLogElement::pure(LogElement::sigma(k)));
      CHECK(model.compare(sigma, model.maxPsi()) == Ordering::LT);
      CHECK(model.cutMember(sigma));
    }
    // alpha is squeezed between 0 and every positive old element
    const GapRemovedElement tiny = GapRemovedElement::of(GapLogElement::pure(-LogElement::e(9)));
    const GapRemovedElement absAlpha = positive ? alpha : -alpha;
    CHECK(model.compare(absAlpha, tiny) == Ordering::LT);
    CHECK(model.signum(absAlpha) > 0);
  }
}

TEST_CASE("the log couple embeds into the transmonomial couple") {
  // e_k -> v(l_k), with psi computed on either side
  for (unsigned k = 0; k <= 4; ++k) {
    const TransValue image = TransValue::of(TransMonomial::ell(k));
    const auto psiTrans = psiT(image);
    REQUIRE(psiTrans.has_value());
    // sigma_k corresponds to v((l_0 ... l_k)^{-1})
    TransMonomial expect;
    for (unsigned j = 0; j <= k; ++j)
      expect = expect.times(TransMonomial::ell(j, ScalarValue(-1)));
    CHECK(psiTrans->mono == expect);
    // and the log-side psi has the matching coefficients
    const LogElement sigma = LogElement::sigma(k);
    for (unsigned j = 0; j <= k; ++j)
      CHECK(sigma.coeff(j) == ScalarValue(-1));
  }
}
