#include <doctest.h>

#include <random>

#include "hcouple/vec.hpp"

using namespace hcouple;

namespace {

// Independent order oracle: evaluate an element at rapidly decreasing
// exact weights M^{-rank}. For M past the coefficient magnitudes the
// sign is the leading sign; we accept only a sign that stabilizes
// across three widely spaced magnitudes.
int weightSign(const VecElement& v, const BasisContext& ctx) {
  int last = 0;
  bool stable = false;
  for (const long M : {1009L, 1048583L, 1073741827L}) {
    ScalarValue acc;
    ScalarValue weight{Rational(1)};
    for (std::size_t r = 0; r < ctx.size(); ++r) {
      weight = weight * ScalarValue(Rational(1, M));
      acc = acc + v.coeff(ctx.at(r)) * weight;
    }
    const int s = acc.signum();
    stable = (s == last);
    last = s;
  }
  REQUIRE(stable);
  return last;
}

VecElement vec(std::initializer_list<std::pair<const char*, long>> coeffs) {
  VecElement v;
  for (const auto& [id, c] : coeffs)
    v = v.withCoeff(id, ScalarValue(c));
  return v;
}

} // namespace

TEST_CASE("rational scalars are canonical and exact") {
  const ScalarValue a = ScalarValue::parse("3/4");
  const ScalarValue b = ScalarValue::parse("-2/8");
  CHECK(a + b == ScalarValue::parse("1/2"));
  CHECK((a * b).str() == "-3/16");
  CHECK(ScalarValue::parse("0").isZero());
  CHECK(a / b == ScalarValue(-3));
  CHECK_THROWS_AS(ScalarValue::parse("nonsense"), FormatError);
}

TEST_CASE("quadratic extension sign analysis never needs floats") {
  const ScalarValue r2 = ScalarValue::parse("sqrt2");
  CHECK(r2.signum() == 1);
  CHECK((r2 * r2) == ScalarValue(2));
  // 3/2 - sqrt2 > 0 but 7/5 - sqrt2 < 0 (tight on both sides)
  CHECK((ScalarValue::parse("3/2") - r2).signum() == 1);
  CHECK((ScalarValue::parse("7/5") - r2).signum() == -1);
  // collapse to rational form when the radical part cancels
  const ScalarValue x = ScalarValue::parse("1/2+2/3*sqrt2");
  CHECK((x - ScalarValue::quad(0, Rational(2, 3), 2)).isRational());
  CHECK(x.str() == "1/2+2/3*sqrt2");
  CHECK(ScalarValue::parse(x.str()) == x);
  // inverse through the conjugate
  CHECK((x / x).isOne());
  CHECK_THROWS_AS(ScalarValue::parse("sqrt2") + ScalarValue::parse("sqrt3"),
                  UnsupportedFieldPair);
}

TEST_CASE("vecCompare: identity, scaling, and the leading-coefficient rule") {
  const BasisContext ctx({"b1", "b2"});
  CHECK(vecCompare(VecElement(), VecElement(), ctx) == Ordering::EQ);
  CHECK(vecCompare(vec({{"b1", 3}}), vec({{"b1", 1}}), ctx) == Ordering::GT);
  // leading coefficient -1 wins against any lower-class tail
  const VecElement a = vec({{"b1", -1}, {"b2", 100}});
  CHECK(vecCompare(a, VecElement(), ctx) == Ordering::LT);
  CHECK(weightSign(a, ctx) == -1);
}

TEST_CASE("vecCompare agrees with the weight-embedding oracle on random data") {
  const BasisContext ctx({"b1", "b2", "b3", "b4"});
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> c(-50, 50);
  for (int i = 0; i < 300; ++i) {
    VecElement v;
    for (std::size_t r = 0; r < ctx.size(); ++r)
      v = v.withCoeff(ctx.at(r), ScalarValue(c(rng)));
    CHECK(v.signum(ctx) == weightSign(v, ctx));
  }
}

TEST_CASE("order is total, transitive and translation invariant") {
  const BasisContext ctx({"b1", "b2", "b3"});
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> c(-9, 9);
  auto sample = [&] {
    VecElement v;
    for (std::size_t r = 0; r < ctx.size(); ++r)
      v = v.withCoeff(ctx.at(r), ScalarValue(c(rng)));
    return v;
  };
  for (int i = 0; i < 200; ++i) {
    const VecElement a = sample(), b = sample(), t = sample();
    const Ordering ab = vecCompare(a, b, ctx);
    CHECK(vecCompare(b, a, ctx) == flip(ab));
    CHECK(vecCompare(a + t, b + t, ctx) == ab);
    const VecElement d = sample();
    if (ab == Ordering::LT && vecCompare(b, d, ctx) == Ordering::LT)
      CHECK(vecCompare(a, d, ctx) == Ordering::LT);
  }
}

TEST_CASE("archClass: zero, scaling invariance, leading class") {
  const BasisContext ctx({"b1", "b2"});
  CHECK(archClass(VecElement(), ctx).isZero());
  CHECK(archClass(vec({{"b2", 5}}), ctx) == ArchClass::of("b2"));
  const VecElement mixed = vec({{"b1", 1}, {"b2", -7}});
  CHECK(archClass(mixed, ctx) == ArchClass::of("b1"));

  // sampled-c oracle for the class claim: b1 - 7 b2 is pinched between
  // multiples of b1 in both directions
  const VecElement b1 = vec({{"b1", 1}});
  for (const long cc : {1L, 10L, 1000000L}) {
    const ScalarValue big(cc);
    CHECK(vecCompare(mixed.scaled(ScalarValue(1)), b1.scaled(big + ScalarValue(7)), ctx) ==
          Ordering::LT);
    CHECK(vecCompare(b1, mixed.scaled(big + ScalarValue(7)), ctx) == Ordering::LT);
  }
}

TEST_CASE("[c a] = [a] for all nonzero scalars") {
  const BasisContext ctx({"b1", "b2", "b3"});
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> c(-9, 9);
  for (int i = 0; i < 200; ++i) {
    VecElement v;
    for (std::size_t r = 0; r < ctx.size(); ++r)
      v = v.withCoeff(ctx.at(r), ScalarValue(c(rng)));
    long s = c(rng);
    if (s == 0)
      s = 3;
    CHECK(archClass(v.scaled(ScalarValue(s)), ctx) == archClass(v, ctx));
  }
}

TEST_CASE("colonDiv: definition case, zero case, and the default point") {
  const BasisContext ctx({"b1", "b2"});
  const ExtVec a = vec({{"b1", 3}, {"b2", 5}});
  const ExtVec b1 = vec({{"b1", 1}});
  const ExtVec b2 = vec({{"b2", 1}});
  CHECK(colonDiv(a, b1, ctx) == ExtScalar(ScalarValue(3)));
  CHECK(colonDiv(b2, b1, ctx) == ExtScalar(ScalarValue(0)));
  CHECK(colonDiv(b1, b2, ctx).isInf()); // [b1] > [b2] falls off the domain
  CHECK(colonDiv(ExtVec::infinity(), b1, ctx).isInf());
  CHECK(colonDiv(a, ExtVec(VecElement()), ctx).isInf());
}

TEST_CASE("colon correctness and the Hahn property on random pairs") {
  const BasisContext ctx({"b1", "b2", "b3"});
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> c(-9, 9);
  auto sample = [&] {
    VecElement v;
    for (std::size_t r = 0; r < ctx.size(); ++r)
      v = v.withCoeff(ctx.at(r), ScalarValue(c(rng)));
    return v;
  };
  for (int i = 0; i < 300; ++i) {
    const VecElement a = sample(), b = sample();
    const ExtScalar q = colonDiv(ExtVec(a), ExtVec(b), ctx);
    if (!q.isInf() && !b.isZero()) {
      const VecElement r = a - b.scaled(q.finite());
      CHECK(classCompare(archClass(r, ctx), archClass(b, ctx), ctx) == Ordering::LT);
    }
    // Hahn space: equal nonzero classes always admit a finite colon
    // value that strictly reduces the class of a
    if (!a.isZero() && !b.isZero() &&
        classCompare(archClass(a, ctx), archClass(b, ctx), ctx) == Ordering::EQ) {
      REQUIRE(!q.isInf());
      const VecElement r = a - b.scaled(q.finite());
      CHECK(classCompare(archClass(r, ctx), archClass(a, ctx), ctx) == Ordering::LT);
    }
  }
}

TEST_CASE("a subspace with a class gap below it is order-closed") {
  // span(b1, b2) inside (b1, b2, b3): for gamma outside with a distinct
  // leading class, no subspace point comes epsilon-close
  const BasisContext ctx({"b1", "b2", "b3"});
  const VecElement gamma = vec({{"b3", 1}});
  const VecElement eps = vec({{"b3", 1}}).scaled(ScalarValue(Rational(1, 2)));
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<long> c(-20, 20);
  for (int i = 0; i < 200; ++i) {
    const VecElement x = vec({{"b1", c(rng)}, {"b2", c(rng)}});
    VecElement diff = gamma - x;
    if (diff.signum(ctx) < 0)
      diff = -diff;
    CHECK(vecCompare(diff, eps, ctx) != Ordering::LT);
  }
}

TEST_CASE("pairwise distinct classes force linear independence") {
  // the rank mechanism: eliminating within classes can never kill a
  // vector whose class differs from every other
  const BasisContext ctx({"b1", "b2", "b3", "b4"});
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> c(-9, 9);
  for (int trial = 0; trial < 50; ++trial) {
    // vectors with strictly decreasing leading classes
    std::vector<VecElement> vecs;
    for (std::size_t lead = 0; lead < ctx.size(); ++lead) {
      VecElement v = VecElement::unitVector(ctx.at(lead));
      for (std::size_t r = lead + 1; r < ctx.size(); ++r)
        v = v.withCoeff(ctx.at(r), ScalarValue(c(rng)));
      vecs.push_back(v);
    }
    // exact elimination: each pivot removes exactly one vector
    std::size_t rank = 0;
    std::vector<VecElement> work = vecs;
    while (!work.empty()) {
      std::size_t best = 0;
      for (std::size_t i = 1; i < work.size(); ++i)
        if (classCompare(archClass(work[i], ctx), archClass(work[best], ctx), ctx) == Ordering::GT)
          best = i;
      const VecElement pivot = work[best];
      work.erase(work.begin() + static_cast<std::ptrdiff_t>(best));
      for (auto& w : work) {
        const ExtScalar q = colonDiv(ExtVec(w), ExtVec(pivot), ctx);
        if (!q.isInf() && classCompare(archClass(w, ctx), archClass(pivot, ctx), ctx) ==
                              Ordering::EQ)
          w = w - pivot.scaled(q.finite());
      }
      work.erase(std::remove_if(work.begin(), work.end(),
                                [](const VecElement& w) { return w.isZero(); }),
                 work.end());
      ++rank;
    }
    CHECK(rank == vecs.size());
  }
}
