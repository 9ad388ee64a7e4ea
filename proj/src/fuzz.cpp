#include "hcouple/fuzz.hpp"

#include <chrono>

#include "hcouple/lang.hpp"

namespace hcouple::fuzz {

namespace {

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

ScalarValue randomFieldScalar(Rng& rng, unsigned radicand, bool nonzero = false) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 4);
  std::uniform_int_distribution<int> quad(0, 3);
  ScalarValue v{Rational(num(rng), den(rng))};
  if (radicand != 0 && quad(rng) == 0)
    v = v + ScalarValue::quad(0, Rational(num(rng), den(rng)), radicand);
  if (nonzero && v.isZero())
    v = ScalarValue(1);
  return v;
}

ScalarValue randomPositiveScalar(Rng& rng, unsigned radicand) {
  ScalarValue v = randomFieldScalar(rng, radicand);
  if (v.signum() < 0)
    v = -v;
  if (v.isZero())
    v = ScalarValue(1);
  return v;
}

} // namespace

Presentation randomPresentation(Rng& rng, std::size_t maxClasses, bool allowQuad) {
  std::uniform_int_distribution<std::size_t> classes(1, maxClasses);
  std::uniform_int_distribution<int> fieldPick(0, 3);
  const std::size_t n = classes(rng);
  const unsigned radicand = (allowQuad && fieldPick(rng) == 0) ? 2 : 0;

  std::vector<BasisId> ids;
  ids.reserve(n);
  for (std::size_t i = 1; i <= n; ++i)
    ids.push_back("b" + std::to_string(i));
  BasisContext ctx(ids);

  // ψ climbs by a positive increment whose class drops one step each
  // time; that realizes HC strictly and the AC3 criterion by
  // construction, with the unit as the top class fixed point
  PsiTable table;
  VecElement current = VecElement::unitVector("b1");
  table["b1"] = current;
  for (std::size_t i = 1; i < n; ++i) {
    VecElement inc = VecElement().withCoeff(ids[i], randomPositiveScalar(rng, radicand));
    for (std::size_t j = i + 1; j < n; ++j)
      inc = inc.withCoeff(ids[j], randomFieldScalar(rng, radicand));
    current = current + inc;
    table[ids[i]] = current;
  }
  return Presentation(std::move(ctx), std::move(table), HCutSpec::psiDown(),
                      VecElement::unitVector("b1"), radicand);
}

VecElement randomElement(const Presentation& p, Rng& rng) {
  VecElement v;
  if (p.isTrivial())
    return v;
  std::uniform_int_distribution<std::size_t> pick(0, p.ctx().size() - 1);
  std::uniform_int_distribution<std::size_t> width(1, p.ctx().size());
  const std::size_t terms = width(rng);
  for (std::size_t t = 0; t < terms; ++t)
    v = v.withCoeff(p.ctx().at(pick(rng)), randomFieldScalar(rng, p.scalarRadicand()));
  return v;
}

// ---------------------------------------------------------------------------
// criterion 1: axiom suite over random presentations

SuiteResult axiomSuite(std::uint64_t seed, std::size_t cases) {
  Timer timer;
  SuiteResult res;
  res.name = "axioms";
  Rng rng(seed);
  Presentation p;
  for (std::size_t i = 0; i < cases; ++i) {
    if (i % 10 == 0) {
      p = randomPresentation(rng);
      if (!p.validateAxioms().ok) {
        res.fail("generated presentation fails validation at case " + std::to_string(i));
        continue;
      }
    }
    ++res.cases;
    const auto& ctx = p.ctx();
    VecElement a = randomElement(p, rng);
    VecElement b = randomElement(p, rng);
    const ScalarValue c = randomFieldScalar(rng, p.scalarRadicand(), /*nonzero=*/true);

    // (AC2) ψ(c a) = ψ(a), c ≠ 0
    if (!a.isZero() && p.psi(ExtVec(a.scaled(c))) != p.psi(ExtVec(a))) {
      res.fail("AC2 fails at " + a.str() + " scaled by " + c.str());
      continue;
    }
    // (HC) 0 < a ≤ b ⇒ ψ(a) ≥ ψ(b)
    if (!a.isZero() && !b.isZero()) {
      VecElement x = a.signum(ctx) < 0 ? -a : a;
      VecElement y = b.signum(ctx) < 0 ? -b : b;
      if (vecCompare(x, y, ctx) == Ordering::GT)
        std::swap(x, y);
      if (vecCompare(p.psi(ExtVec(x)).finite(), p.psi(ExtVec(y)).finite(), ctx) == Ordering::LT) {
        res.fail("HC fails at " + x.str() + " <= " + y.str());
        continue;
      }
    }
    // (AC3) a > 0 ⇒ a + ψ(a) > ψ(b)
    if (!a.isZero() && !b.isZero()) {
      const VecElement x = a.signum(ctx) < 0 ? -a : a;
      if (vecCompare(p.derive(ExtVec(x)).finite(), p.psi(ExtVec(b)).finite(), ctx) !=
          Ordering::GT) {
        res.fail("AC3 fails at " + x.str() + " vs " + b.str());
        continue;
      }
    }
    // Hahn type: ψ(a) = ψ(b) admits a class-reducing scalar
    if (!a.isZero() && !b.isZero() && p.psi(ExtVec(a)) == p.psi(ExtVec(b))) {
      const ExtScalar q = colonDiv(ExtVec(a), ExtVec(b), ctx);
      if (q.isInf()) {
        res.fail("Hahn reduction has no scalar at " + a.str() + ", " + b.str());
        continue;
      }
      const VecElement reduced = a - b.scaled(q.finite());
      const ExtVec pr = p.psi(ExtVec(reduced));
      if (!pr.isInf() && vecCompare(pr.finite(), p.psi(ExtVec(a)).finite(), ctx) != Ordering::GT) {
        res.fail("Hahn reduction does not raise psi at " + a.str() + ", " + b.str());
        continue;
      }
    }
    // [ψ(a) - ψ(b)] < [a - b] for distinct ψ-values
    if (!a.isZero() && !b.isZero() && a != b && p.psi(ExtVec(a)) != p.psi(ExtVec(b))) {
      const VecElement dpsi = p.psi(ExtVec(a)).finite() - p.psi(ExtVec(b)).finite();
      if (classCompare(archClass(dpsi, ctx), archClass(a - b, ctx), ctx) != Ordering::LT) {
        res.fail("[psi(a)-psi(b)] < [a-b] fails at " + a.str() + ", " + b.str());
        continue;
      }
    }
  }
  res.seconds = timer.elapsed();
  return res;
}

// ---------------------------------------------------------------------------
// criterion 2: extension constructors

namespace {

std::vector<VecElement> sampleElements(const Presentation& p, Rng& rng, std::size_t n) {
  std::vector<VecElement> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(randomElement(p, rng));
  return out;
}

// a β strictly between adjacent ψ-values (or below the least one),
// valid for insertion by construction
std::pair<std::size_t, VecElement> randomInsertionPoint(const Presentation& p, Rng& rng) {
  const auto& order = p.ctx().order();
  std::uniform_int_distribution<std::size_t> posPick(0, order.size() - 1);
  std::uniform_int_distribution<int> tNum(1, 7);
  const std::size_t pos = posPick(rng);
  if (pos == 0) {
    // above all classes: anything strictly below the least ψ-value
    VecElement drop = VecElement::unitVector(order[0]).scaled(randomPositiveScalar(rng, p.scalarRadicand()));
    return {0, p.psiTable().at(order[0]) - drop};
  }
  const VecElement& lo = p.psiTable().at(order[pos - 1]);
  const VecElement& hi = p.psiTable().at(order[pos]);
  const ScalarValue t{Rational(tNum(rng), 8)};
  return {pos, lo + (hi - lo).scaled(t)};
}

bool checkGapRemovalModel(GapRemovalSign sign, Rng& rng, std::string* why) {
  const GapRemovedLogModel model(sign == GapRemovalSign::Positive);
  LogModel logs;
  const GapRemovedElement alpha = GapRemovedElement::alpha();
  const GapRemovedElement lambda = GapRemovedElement::of(GapLogElement::lambda());

  // sign of the adjoined α and its derivative α' = λ
  const int as = model.signum(alpha);
  if ((sign == GapRemovalSign::Positive) != (as > 0)) {
    *why = "adjoined alpha has the wrong sign";
    return false;
  }
  const auto da = model.derive(alpha);
  if (!da || !(model.compare(*da, lambda) == Ordering::EQ)) {
    *why = "alpha' != lambda";
    return false;
  }
  // Ψ^α = Ψ ∪ {λ - α} with the new value as maximum, everything else
  // unchanged; the old order, ψ and the matching cut embed
  for (int i = 0; i < 100; ++i) {
    Rng inner(rng());
    GapLogModel gapModel;
    const GapLogElement x = std::get<GapLogElement>(gapModel.sampleElement(inner));
    const GapLogElement y = std::get<GapLogElement>(gapModel.sampleElement(inner));
    const GapRemovedElement ex = GapRemovedElement::of(x);
    const GapRemovedElement ey = GapRemovedElement::of(y);
    if (model.compare(ex, ey) != gapCompare(x, y)) {
      *why = "order not preserved on old elements";
      return false;
    }
    if (!x.isZero()) {
      const auto px = model.psi(ex);
      const auto pOld = psiGap(x);
      if (!px || !pOld ||
          model.compare(*px, GapRemovedElement::of(GapLogElement::pure(*pOld))) != Ordering::EQ) {
        *why = "psi not preserved on old elements";
        return false;
      }
      if (model.compare(*px, model.maxPsi()) != Ordering::LT) {
        *why = "old psi-value above the new maximum";
        return false;
      }
      // cut restriction: the negative removal preserves (≤ λ); the
      // positive one induces the Ψ↓ cut, i.e. drops λ itself
      const bool oldSide = sign == GapRemovalSign::Negative
                               ? gapCutMember(x)
                               : (gapCutMember(x) && gapCompare(x, GapLogElement::lambda()) !=
                                                         Ordering::EQ);
      if (model.cutMember(ex) != oldSide) {
        *why = "cut restriction mismatch at " + x.str();
        return false;
      }
    }
    // sampled axioms on mixed elements of the extension
    std::uniform_int_distribution<int> smallQ(-3, 3);
    const GapRemovedElement mixed = ex + alpha.scaled(ScalarValue(smallQ(inner)));
    const GapRemovedElement mixed2 = ey + alpha.scaled(ScalarValue(smallQ(inner)));
    if (!(mixed - mixed).alphaCoeff.isZero()) {
      *why = "arithmetic in the extension is broken";
      return false;
    }
    if (model.signum(mixed) != 0 && model.signum(mixed2) != 0) {
      GapRemovedElement a = model.signum(mixed) < 0 ? -mixed : mixed;
      GapRemovedElement b = model.signum(mixed2) < 0 ? -mixed2 : mixed2;
      if (model.compare(a, b) == Ordering::GT)
        std::swap(a, b);
      if (model.compare(*model.psi(a), *model.psi(b)) == Ordering::LT) {
        *why = "HC fails on the gap-removed extension";
        return false;
      }
      if (model.compare(*model.derive(a), *model.psi(b)) != Ordering::GT) {
        *why = "AC3 fails on the gap-removed extension";
        return false;
      }
    }
  }
  (void)logs;
  return true;
}

} // namespace

SuiteResult extensionSuite(std::uint64_t seed, std::size_t cases) {
  Timer timer;
  SuiteResult res;
  res.name = "extensions";
  Rng rng(seed);
  std::uniform_int_distribution<int> opPick(0, 9);

  for (std::size_t i = 0; i < cases; ++i) {
    ++res.cases;
    const int op = opPick(rng);
    try {
      if (op <= 3) { // extendGrounded
        const Presentation p = randomPresentation(rng);
        const VecElement oldMax = p.maxPsi();
        const ExtensionResult ext = extendGrounded(p);
        std::string why;
        if (!verifyEmbedding(p, ext, sampleElements(p, rng, 100), &why)) {
          res.fail("extendGrounded embedding: " + why);
          continue;
        }
        const ExtVec derived = ext.extended.derive(ExtVec(ext.adjoinedElement));
        if (derived.isInf() || derived.finite() != oldMax) {
          res.fail("extendGrounded: alpha' != old max Psi");
          continue;
        }
        if (vecCompare(ext.extended.maxPsi(), oldMax, ext.extended.ctx()) != Ordering::GT) {
          res.fail("extendGrounded: new max Psi not larger");
          continue;
        }
      } else if (op <= 6) { // insertClass
        const Presentation p = randomPresentation(rng);
        const auto [pos, beta] = randomInsertionPoint(p, rng);
        bool isPsiValue = false;
        for (const auto& [id, v] : p.psiTable())
          if (v == beta)
            isPsiValue = true;
        if (isPsiValue)
          continue; // resample next round; injectivity forbids this one
        const ExtensionResult ext = insertClass(p, pos, beta);
        std::string why;
        if (!verifyEmbedding(p, ext, sampleElements(p, rng, 100), &why)) {
          res.fail("insertClass embedding: " + why);
          continue;
        }
        const ExtVec psiNew = ext.extended.psi(ExtVec(ext.adjoinedElement));
        if (psiNew.isInf() || psiNew.finite() != beta) {
          res.fail("insertClass: psi of the new class is not beta");
          continue;
        }
      } else if (op <= 8) { // adjoinPsiValue
        const Presentation p = randomPresentation(rng);
        const auto [pos, beta] = randomInsertionPoint(p, rng);
        (void)pos;
        if (!p.cutMember(beta))
          continue;
        bool isPsiValue = false;
        for (const auto& [id, v] : p.psiTable())
          if (v == beta)
            isPsiValue = true;
        if (isPsiValue)
          continue;
        const ExtensionResult ext = adjoinPsiValue(p, beta);
        std::string why;
        if (!verifyEmbedding(p, ext, sampleElements(p, rng, 100), &why)) {
          res.fail("adjoinPsiValue embedding: " + why);
          continue;
        }
        if (ext.adjoinedElement.signum(ext.extended.ctx()) <= 0) {
          res.fail("adjoinPsiValue: adjoined element not positive");
          continue;
        }
        const ExtVec psiNew = ext.extended.psi(ExtVec(ext.adjoinedElement));
        if (psiNew.isInf() || psiNew.finite() != beta) {
          res.fail("adjoinPsiValue: psi(alpha) != beta");
          continue;
        }
      } else { // removeGap: the trivial-couple instance and the concrete gap model
        if (op == 9) {
          const Presentation trivialGap(BasisContext(std::vector<BasisId>{}), PsiTable{},
                                        HCutSpec::withGap(VecElement()), VecElement());
          const ExtensionResult ext = removeGap(trivialGap, GapRemovalSign::Negative);
          if (!ext.extended.validateAxioms().ok || ext.extended.ctx().size() != 1) {
            res.fail("removeGap of the trivial couple is not the one-class couple");
            continue;
          }
          const ExtVec derived = ext.extended.derive(ExtVec(ext.adjoinedElement));
          if (derived.isInf() || !derived.finite().isZero()) {
            res.fail("removeGap: alpha' != 0 on the trivial instance");
            continue;
          }
        }
        const GapRemovalSign sign = (i % 2 == 0) ? GapRemovalSign::Positive : GapRemovalSign::Negative;
        std::string why;
        if (!checkGapRemovalModel(sign, rng, &why)) {
          res.fail("removeGap on the gap model: " + why);
          continue;
        }
      }
    } catch (const Error& e) {
      res.fail(std::string("unexpected error: ") + e.what());
    }
  }
  res.seconds = timer.elapsed();
  return res;
}

// ---------------------------------------------------------------------------
// criterion 3: closure engine

namespace {

// the canonical chain P1 -> P2 -> ... embeds into the log-monomial
// couple by b_{k+1} -> -e_k
bool checkChainEmbedsInLogModel(const Presentation& stage, std::string* why) {
  const auto& order = stage.ctx().order();
  auto toLog = [&](const VecElement& v) {
    LogElement out;
    for (const auto& [id, c] : v.support()) {
      const unsigned k = static_cast<unsigned>(std::stoul(id.substr(1))) - 1;
      out = out + LogElement::e(k, -c);
    }
    return out;
  };
  for (std::size_t i = 0; i < order.size(); ++i) {
    const LogElement image = toLog(VecElement::unitVector(order[i]));
    const auto psiImage = psiL(image);
    if (!psiImage || *psiImage != toLog(stage.psiTable().at(order[i]))) {
      *why = "psi does not commute with the embedding at class " + order[i];
      return false;
    }
  }
  // order and cut on a few fixed probes
  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    VecElement a, b;
    std::uniform_int_distribution<int> coeff(-4, 4);
    for (const auto& id : order) {
      a = a.withCoeff(id, ScalarValue(coeff(rng)));
      b = b.withCoeff(id, ScalarValue(coeff(rng)));
    }
    const Ordering lhs = vecCompare(a, b, stage.ctx());
    const int rhs = (toLog(a) - toLog(b)).signum();
    if (static_cast<int>(lhs) != rhs) {
      *why = "order does not commute with the embedding";
      return false;
    }
    if (stage.cutMember(a) != cutMemberL(toLog(a))) {
      *why = "cut membership does not commute with the embedding";
      return false;
    }
  }
  return true;
}

} // namespace

SuiteResult closureSuite(std::uint64_t seed, std::size_t sequences) {
  Timer timer;
  SuiteResult res;
  res.name = "closure";
  Rng rng(seed);

  // canonical chain embedding: the first five stages
  {
    ClosureEngine engine(Presentation::seedP1());
    for (int k = 0; k < 4; ++k) {
      std::string why;
      if (!checkChainEmbedsInLogModel(engine.stage(), &why))
        res.fail("stage " + std::to_string(k + 1) + ": " + why);
      engine.integrate(engine.stage().maxPsi());
    }
    std::string why;
    if (!checkChainEmbedsInLogModel(engine.stage(), &why))
      res.fail("stage 5: " + why);
  }

  std::uniform_int_distribution<std::size_t> lenPick(1, 50);
  std::uniform_int_distribution<int> opPick(0, 2);
  std::uniform_int_distribution<int> tNum(1, 7);
  for (std::size_t s = 0; s < sequences; ++s) {
    ++res.cases;
    ClosureEngine engine(Presentation::seedP1());
    struct Record {
      bool isIntegral;
      VecElement input, answer;
    };
    std::vector<Record> records;
    const std::size_t len = lenPick(rng);
    try {
      for (std::size_t q = 0; q < len; ++q) {
        const Presentation& st = engine.stage();
        if (opPick(rng) != 0) {
          VecElement gamma = randomElement(st, rng);
          records.push_back({true, gamma, engine.integrate(gamma)});
        } else {
          // a cut member: max Ψ minus a positive drop, or a mid-value
          VecElement beta;
          if (opPick(rng) == 0 && st.ctx().size() >= 2) {
            const auto& order = st.ctx().order();
            std::uniform_int_distribution<std::size_t> posPick(1, order.size() - 1);
            const std::size_t pos = posPick(rng);
            const VecElement& lo = st.psiTable().at(order[pos - 1]);
            const VecElement& hi = st.psiTable().at(order[pos]);
            beta = lo + (hi - lo).scaled(ScalarValue(Rational(tNum(rng), 8)));
          } else {
            VecElement drop = VecElement::unitVector(st.ctx().order().front())
                                  .scaled(randomPositiveScalar(rng, st.scalarRadicand()));
            beta = st.maxPsi() - drop;
          }
          records.push_back({false, beta, engine.psiPreimage(beta)});
        }
      }
    } catch (const Error& e) {
      res.fail("sequence " + std::to_string(s) + " raised: " + e.what());
      continue;
    }
    // final stage validates; every recorded answer still satisfies its
    // defining equation there
    const Presentation& last = engine.stage();
    if (!last.validateAxioms().ok) {
      res.fail("final stage fails validation in sequence " + std::to_string(s));
      continue;
    }
    for (const Record& r : records) {
      if (r.isIntegral) {
        const ExtVec d = last.derive(ExtVec(r.answer));
        if (d.isInf() || d.finite() != r.input) {
          res.fail("recorded integral broke in the final stage");
          break;
        }
      } else {
        const ExtVec ps = last.psi(ExtVec(r.answer));
        if (ps.isInf() || ps.finite() != r.input) {
          res.fail("recorded psi-preimage broke in the final stage");
          break;
        }
      }
    }
  }
  res.seconds = timer.elapsed();
  return res;
}

// ---------------------------------------------------------------------------
// criterion 4: log-monomial model certificates

namespace {

LogElement randomLogElement(Rng& rng, unsigned maxIdx = 7, unsigned radicand = 0) {
  std::uniform_int_distribution<unsigned> pick(0, maxIdx);
  std::uniform_int_distribution<int> width(1, 4);
  LogElement v;
  const int terms = width(rng);
  for (int t = 0; t < terms; ++t)
    v = v + LogElement::e(pick(rng), randomFieldScalar(rng, radicand));
  return v;
}

} // namespace

SuiteResult logModelSuite(std::uint64_t seed, std::size_t cases) {
  Timer timer;
  SuiteResult res;
  res.name = "logmodel";
  Rng rng(seed);

  // the worked integrals
  if (integrateL(LogElement{}) != LogElement::e(0))
    res.fail("integral of 0 is not e0");
  if (integrateL(-LogElement::e(0)) != LogElement::e(1))
    res.fail("integral of -e0 is not e1");
  if (integrateL(-(LogElement::e(0) + LogElement::e(1))) != LogElement::e(2))
    res.fail("integral of -(e0+e1) is not e2");

  // λ above Ψ, below (Γ^>)'
  const GapLogElement lambda = GapLogElement::lambda();
  for (unsigned k = 0; k <= 50; ++k) {
    if (gapCompare(lambda, GapLogElement::pure(LogElement::sigma(k))) != Ordering::GT)
      res.fail("lambda does not dominate sigma_" + std::to_string(k));
  }
  for (int i = 0; i < 1000; ++i) {
    LogElement delta = randomLogElement(rng);
    if (delta.isZero())
      continue;
    if (delta.signum() < 0)
      delta = -delta;
    const auto derived = deriveL(delta);
    if (gapCompare(lambda, GapLogElement::pure(*derived)) != Ordering::LT)
      res.fail("lambda is not below " + delta.str() + "'");
  }
  // density of Γ_L in Γ_L + Qλ
  for (int i = 0; i < 1000; ++i) {
    const LogElement gamma = randomLogElement(rng);
    const ScalarValue c = randomFieldScalar(rng, 0, /*nonzero=*/true);
    const GapLogElement mu{gamma, c};
    LogElement eps = randomLogElement(rng);
    if (eps.isZero())
      eps = LogElement::e(3);
    if (eps.signum() < 0)
      eps = -eps;
    unsigned deep = std::max(eps.maxIndex(), gamma.isZero() ? 0u : gamma.maxIndex()) + 1;
    // γ' = γ - c(e_0 + ... + e_deep) approximates within any ε of a
    // class above [e_{deep+1}]
    LogElement tail;
    for (unsigned j = 0; j <= deep; ++j)
      tail = tail + LogElement::e(j);
    const GapLogElement diff = mu - GapLogElement::pure(gamma - tail.scaled(c));
    GapLogElement absDiff = gapSignum(diff) < 0 ? -diff : diff;
    if (gapCompare(absDiff, GapLogElement::pure(eps)) != Ordering::LT)
      res.fail("density approximation missed at " + mu.str());
  }

  // integrateL total with the exact postcondition, plus sampled axioms
  for (std::size_t i = 0; i < cases; ++i) {
    ++res.cases;
    const LogElement gamma = randomLogElement(rng);
    const LogElement alpha = integrateL(gamma);
    if (deriveL(alpha) != std::optional<LogElement>(gamma)) {
      res.fail("integration postcondition failed at " + gamma.str());
      continue;
    }
    const LogElement b = randomLogElement(rng);
    if (!gamma.isZero() && !b.isZero()) {
      const ScalarValue c = randomFieldScalar(rng, 0, /*nonzero=*/true);
      if (psiL(gamma.scaled(c)) != psiL(gamma)) {
        res.fail("AC2 fails on the log model at " + gamma.str());
        continue;
      }
      LogElement x = gamma.signum() < 0 ? -gamma : gamma;
      LogElement y = b.signum() < 0 ? -b : b;
      if (y < x)
        std::swap(x, y);
      if (*psiL(x) < *psiL(y)) {
        res.fail("HC fails on the log model");
        continue;
      }
      if (!(*psiL(b) < *deriveL(x))) {
        res.fail("AC3 fails on the log model");
        continue;
      }
      if (psiL(gamma) == psiL(b)) {
        // Hahn type: same ψ forces same class and a reducing scalar
        if (logClassCompare(gamma, b) != 0) {
          res.fail("equal psi with distinct classes on the log model");
          continue;
        }
        const ScalarValue q = gamma.coeff(gamma.leadingIndex()) / b.coeff(b.leadingIndex());
        const LogElement reduced = gamma - b.scaled(q);
        if (!reduced.isZero() && !(*psiL(gamma) < *psiL(reduced))) {
          res.fail("Hahn reduction fails on the log model");
          continue;
        }
      }
    }
  }
  res.seconds = timer.elapsed();
  return res;
}

// ---------------------------------------------------------------------------
// criterion 5: the introduction example, plus transmonomial axioms

SuiteResult transExampleSuite(std::uint64_t seed, std::size_t axiomSamples) {
  Timer timer;
  SuiteResult res;
  res.name = "transmodel";
  Rng rng(seed);
  TransModel model;

  // [v(e^{e^{cx}})] strictly increase with c, so the values of the
  // zero set are independent: rank n for each n ≤ 6
  std::vector<MValue> values;
  for (int c = 1; c <= 6; ++c) {
    const TransMonomial inner =
        TransMonomial::exp(MultiSeries::single(TransMonomial::x(), ScalarValue(c)));
    const TransMonomial tower = TransMonomial::exp(MultiSeries::single(inner, ScalarValue(1)));
    values.push_back(TransValue::of(tower));
    if (spanRank(model, values) != static_cast<std::size_t>(c))
      res.fail("rank of the first " + std::to_string(c) + " towers is wrong");
  }
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j)
      if (model.classCompare(values[i], values[j]) >= 0)
        res.fail("tower classes do not strictly increase");

  // ψ(v(e^{b e^{cx}})) = v(e^{cx}) at twenty rational parameter pairs
  std::uniform_int_distribution<int> bNum(-6, 6);
  std::uniform_int_distribution<int> cNum(1, 6);
  std::uniform_int_distribution<int> den(1, 3);
  for (int t = 0; t < 20; ++t) {
    ScalarValue b{Rational(bNum(rng), den(rng))};
    if (b.isZero())
      b = ScalarValue(2);
    const ScalarValue c{Rational(cNum(rng), den(rng))};
    const TransMonomial inner = TransMonomial::exp(MultiSeries::single(TransMonomial::x(), c));
    const TransMonomial m = TransMonomial::exp(MultiSeries::single(inner, b));
    const auto p = psiT(TransValue::of(m));
    if (!p || p->mono != inner)
      res.fail("psi(v(e^{b e^{cx}})) != v(e^{cx}) at b=" + b.str() + ", c=" + c.str());
  }

  // sampled H-couple axioms and Hahn type on monomial values
  for (std::size_t i = 0; i < axiomSamples; ++i) {
    ++res.cases;
    const MValue a = model.sampleElement(rng);
    const MValue b = model.sampleElement(rng);
    if (model.isZero(a) || model.isZero(b))
      continue;
    const ScalarValue c = randomFieldScalar(rng, 0, /*nonzero=*/true);
    if (model.compare(*model.psi(model.scalarMul(c, a)), *model.psi(a)) != Ordering::EQ) {
      res.fail("AC2 fails on the transmonomial model");
      continue;
    }
    MValue x = model.signum(a) < 0 ? model.negate(a) : a;
    MValue y = model.signum(b) < 0 ? model.negate(b) : b;
    if (model.compare(x, y) == Ordering::GT)
      std::swap(x, y);
    if (model.compare(*model.psi(x), *model.psi(y)) == Ordering::LT) {
      res.fail("HC fails on the transmonomial model");
      continue;
    }
    if (model.compare(*model.derive(x), *model.psi(b)) != Ordering::GT) {
      res.fail("AC3 fails on the transmonomial model");
      continue;
    }
    if (model.compare(*model.psi(a), *model.psi(b)) == Ordering::EQ) {
      if (model.classCompare(a, b) != 0) {
        res.fail("equal psi with distinct classes on the transmonomial model");
        continue;
      }
      const auto q = model.colon(a, b);
      const MValue reduced = model.add(a, model.negate(model.scalarMul(*q, b)));
      if (!model.isZero(reduced) &&
          model.compare(*model.psi(reduced), *model.psi(a)) != Ordering::GT) {
        res.fail("Hahn reduction fails on the transmonomial model");
        continue;
      }
    }
  }
  res.seconds = timer.elapsed();
  return res;
}

// ---------------------------------------------------------------------------
// criterion 6: the classifier fixtures

SuiteResult classifierSuite(std::uint64_t seed) {
  Timer timer;
  SuiteResult res;
  res.name = "classifier";
  Rng rng(seed);

  // Γ = {1}, β = v(e^{e^x}) in the transmonomial couple: case (d)_1
  // with β_1† = 0 ∈ Γ \ Γ†
  {
    TransModel model;
    const GeneratingSet gamma = GeneratingSet::of({TransValue::unit()});
    const TransMonomial ex = TransMonomial::exp(MultiSeries::single(TransMonomial::x(), ScalarValue(1)));
    const TransMonomial eex = TransMonomial::exp(MultiSeries::single(ex, ScalarValue(1)));
    const MValue beta = TransValue::of(eex);
    const ClassifierReport rep = classifySimpleExtension(model, gamma, beta);
    res.cases++;
    if (rep.verdict != CaseVerdict::CaseDn || rep.n != 1) {
      res.fail("tower fixture verdict is " + caseVerdictStr(rep.verdict, rep.n));
    } else {
      if (model.compare(rep.betas[1], MValue(TransValue::of(ex))) != Ordering::EQ)
        res.fail("beta_1 is not v(e^x)");
      if (!model.isZero(rep.betaDaggers[1]))
        res.fail("beta_1-dagger is not 0");
      const CheckReport inv = caseInvariants(model, gamma, rep, rng);
      if (!inv.ok)
        res.fail("tower fixture invariants: " + inv.failures.front());
      const KeyIntervalResult key = keyIntervalRadius(model, gamma, rep, rng, 100);
      if (!key.certification.ok)
        res.fail("key interval certification failed on the tower fixture");
    }
  }

  // the gap fixture: Γ = the log-monomial base, β = λ: case (a) with
  // Ψ_β = Ψ
  {
    GapLogModel model;
    const GeneratingSet gamma = GeneratingSet::base();
    const MValue beta = GapLogElement::lambda();
    const ClassifierReport rep = classifySimpleExtension(model, gamma, beta);
    res.cases++;
    if (rep.verdict != CaseVerdict::CaseA) {
      res.fail("gap fixture verdict is " + caseVerdictStr(rep.verdict, rep.n));
    } else {
      const CheckReport inv = caseInvariants(model, gamma, rep, rng);
      if (!inv.ok)
        res.fail("gap fixture invariants: " + inv.failures.front());
    }
  }

  // best-approximation daggers over log slices realize the maximum
  {
    LogModel model;
    std::vector<MValue> gens{LogElement::e(0), LogElement::e(1)};
    const MValue beta = LogElement::e(3);
    const DaggerApprox approx = bestApproxDagger(model, gens, beta);
    res.cases++;
    if (approx.daggerInSpan) {
      res.fail("e3 dagger unexpectedly inside span(e0, e1)");
    } else {
      if (model.compare(approx.dagger, MValue(LogElement::sigma(3))) != Ordering::EQ)
        res.fail("(beta - alpha_0)-dagger is not sigma_3");
      for (int t = 0; t < 200; ++t) {
        MValue alpha = model.zero();
        std::uniform_int_distribution<int> num(-5, 5);
        alpha = model.add(alpha, model.scalarMul(ScalarValue(num(rng)), gens[0]));
        alpha = model.add(alpha, model.scalarMul(ScalarValue(num(rng)), gens[1]));
        const MValue shifted = model.add(beta, model.negate(alpha));
        const auto d = model.psi(shifted);
        if (d && model.compare(*d, approx.dagger) == Ordering::GT)
          res.fail("a sampled alpha beats the greedy dagger");
      }
    }
  }

  res.seconds = timer.elapsed();
  return res;
}

// ---------------------------------------------------------------------------
// criterion 7: the strictly monotone solver

namespace {

PsiIterSpec randomSpec(const CoupleModel& model, Rng& rng, int maxDepth = 3) {
  std::uniform_int_distribution<int> depth(1, maxDepth);
  std::uniform_int_distribution<int> num(-3, 3);
  PsiIterSpec spec;
  const int n = depth(rng);
  for (int i = 0; i < n; ++i) {
    spec.shifts.push_back(model.sampleElement(rng));
    ScalarValue c{Rational(num(rng), 1)};
    if (c.isZero())
      c = ScalarValue(1);
    spec.coeffs.push_back(c);
  }
  return spec;
}

} // namespace

SuiteResult solverSuite(std::uint64_t seed, std::size_t pairs, std::size_t roundTrips) {
  Timer timer;
  SuiteResult res;
  res.name = "solver";
  Rng rng(seed);
  LogModel logModel;

  // strict monotonicity on sampled same-component pairs
  for (std::size_t i = 0; i < pairs; ++i) {
    ++res.cases;
    const PsiIterSpec spec = randomSpec(logModel, rng);
    MValue a = logModel.sampleElement(rng);
    MValue b = logModel.sampleElement(rng);
    if (logModel.compare(a, b) == Ordering::EQ)
      continue;
    if (logModel.compare(a, b) == Ordering::GT)
      std::swap(a, b);
    if (!sameComponentSampled(logModel, spec.shifts, a, b, 8))
      continue;
    const auto fa = psiIterObjective(logModel, spec, a);
    const auto fb = psiIterObjective(logModel, spec, b);
    if (!fa || !fb || logModel.compare(*fa, *fb) != Ordering::LT)
      res.fail("objective is not strictly increasing at " + logModel.print(a) + " < " +
               logModel.print(b));
  }

  // round trip: τ from γ, recover exactly γ (uniqueness by strict
  // monotonicity), over the log model and over closure stages
  for (std::size_t i = 0; i < roundTrips; ++i) {
    ++res.cases;
    const bool onStage = (i % 4 == 3);
    std::shared_ptr<CoupleModel> model;
    if (onStage) {
      auto engine = std::make_shared<ClosureEngine>(Presentation::seedP1());
      engine->integrate(engine->stage().maxPsi());
      engine->integrate(engine->stage().maxPsi());
      model = std::make_shared<PresentationModel>(engine, "closure-stage");
    } else {
      model = std::make_shared<LogModel>();
    }
    const PsiIterSpec spec = randomSpec(*model, rng);
    const MValue gamma = model->sampleElement(rng);
    const auto tau = psiIterObjective(*model, spec, gamma);
    if (!tau)
      continue; // γ off the domain; nothing to round-trip
    try {
      const MValue recovered = solveMonotone(*model, spec, *tau);
      if (model->compare(recovered, gamma) != Ordering::EQ)
        res.fail("round trip returned a different solution (uniqueness violated)");
    } catch (const NotConverged& e) {
      res.fail(std::string("solver did not converge: ") + e.what());
    }
  }

  // the closure property: τ built inside the group solves inside it
  for (int i = 0; i < 50; ++i) {
    const PsiIterSpec spec =
        PsiIterSpec{{MValue(LogElement{}), MValue(LogElement{})}, {ScalarValue(1), ScalarValue(1)}};
    const MValue gamma = logModel.sampleElement(rng);
    const auto tau = psiIterObjective(logModel, spec, gamma);
    if (!tau)
      continue;
    const MValue recovered = solveMonotone(logModel, spec, *tau);
    if (logModel.compare(recovered, gamma) != Ordering::EQ)
      res.fail("psi-squared round trip failed");
  }

  res.seconds = timer.elapsed();
  return res;
}

// ---------------------------------------------------------------------------
// criterion 8: language layer

namespace {

struct CorpusLine {
  const char* model;
  const char* formula;
  bool expected;
};

// hand-checked against the tables and worked values of the concrete
// models; every line is exact
const CorpusLine kQfCorpus[] = {
    {"p1", "0 < 1", true},
    {"p1", "psi(1) = 1", true},
    {"p1", "psi(1+1) = 1", true},
    {"p1", "psi(1+1) < 1", false},
    {"p1", "P(1)", true},
    {"p1", "P(1+1)", false},
    {"p1", "P(-sc(5,1))", true},
    {"p1", "psi(0) = inf", true},
    {"p1", "psi(inf) = inf", true},
    {"p1", "-inf = inf", true},
    {"p1", "1 + inf = inf", true},
    {"p1", "sc(2, inf) = inf", true},
    {"p1", "1 : 1 = 1", true},
    {"p1", "(1+1) : 1 = 2", true},
    {"p1", "1 : (1+1) = 1/2", true},
    {"p1", "0 : 1 = 0", true},
    {"p1", "1 : 0 = inf", true},
    {"p1", "inf : 1 = inf", true},
    {"p1", "not (inf < inf)", true},
    {"p1", "inf = inf", true},
    {"p1", "1 + psi(1) < sc(3,1)", true},
    {"p1", "psi(sc(1/2, 1)) = 1", true},
    {"p2", "psi(b2) = 1 + b2", true},
    {"p2", "psi(b2 + sc(100,1)) = 1", true},
    {"p2", "P(1 + b2)", true},
    {"p2", "P(1 + sc(2,b2))", false},
    {"p2", "-b2 + psi(-b2) = 1", true},
    {"p2", "psi(1) < psi(b2)", true},
    {"p2", "sc(1/2, 1+1) = 1", true},
    {"p2", "b2 : 1 = 0", true},
    {"p2", "1 : b2 = inf", true},
    {"p2", "(b2 : b2) * (1+1) = 2", true},
    {"p2", "psi(b1 + b2) = 1", true},
    {"p2", "0 < b2 and b2 < 1", true},
    {"logm", "psi(e1) = 1 - e1", true},
    {"logm", "psi(e2) = 1 - e1 - e2", true},
    {"logm", "psi(sc(3,e1) - sc(5,e4)) = 1 - e1", true},
    {"logm", "e1 + psi(e1) = 1", true},
    {"logm", "P(1)", true},
    {"logm", "P(sc(2,1))", false},
    {"logm", "P(e1)", true},
    {"logm", "not P(sc(2,1) - e1)", true},
    {"logm", "psi(1) = 1", true},
    {"logm", "0 < 1 and P(0)", true},
    {"logm", "e1 < e2", true},
    {"gap", "P(lambda)", true},
    {"gap", "psi(lambda) = 1", true},
    {"gap", "1 - e1 < lambda", true},
    {"gap", "lambda < sc(2,1)", true},
    {"gap", "psi(lambda - 1) = 1 - e1", true},
    {"gap", "P(lambda - 1) and not P(lambda + 1)", true},
    {"gap", "psi(sc(2,lambda)) = 1", true},
    {"trans", "psi(1) = 1", true},
    {"trans", "psi(sc(3/2, 1)) = 1", true},
    {"trans", "P(1)", true},
    {"trans", "not P(sc(2,1))", true},
    {"trans", "0 < 1", true},
    {"trivial>", "P(0)", true},
    {"trivial<", "not P(0)", true},
    {"trivial>", "psi(0) = inf", true},
};

} // namespace

SuiteResult langSuite(std::uint64_t seed) {
  using namespace lang;
  Timer timer;
  SuiteResult res;
  res.name = "lang";
  (void)seed;

  // the fourteen default equations, evaluated over P1
  const auto model = makeModel("p1");
  const char* defaults[] = {
      // vector sort
      "-inf = inf",
      "1 + inf = inf",
      "inf + 1 = inf",
      "inf + inf = inf",
      "psi(0) = inf",
      "psi(inf) = inf",
      // scalar sort (forced by multiplication)
      "-inf = inf * 1",
      "2 + inf = inf * 1",
      "inf + 2 = inf * 1",
      "(inf * 1) + (inf * 1) = inf * 1",
      "2 * inf = inf",
      "inf * 2 = inf",
      "inf * inf = inf",
      // sc off its domain
      "sc(inf, 1) = inf and sc(2, inf) = inf and sc(inf, inf) = inf",
  };
  for (const char* text : defaults) {
    ++res.cases;
    try {
      if (!decideQF(*model, parseFormula(text)))
        res.fail(std::string("default equation is false: ") + text);
    } catch (const Error& e) {
      res.fail(std::string("default equation raised: ") + e.what());
    }
  }

  // the recorded-truth corpus, plus print/parse round trips
  for (const CorpusLine& line : kQfCorpus) {
    ++res.cases;
    try {
      const auto m = makeModel(line.model);
      const Formula f = parseFormula(line.formula);
      if (decideQF(*m, f) != line.expected) {
        res.fail(std::string("corpus mismatch: ") + line.model + " | " + line.formula);
        continue;
      }
      const std::string printed = print(f);
      if (print(parseFormula(printed)) != printed)
        res.fail(std::string("round trip unstable: ") + line.formula);
    } catch (const Error& e) {
      res.fail(std::string("corpus raised: ") + line.model + " | " + line.formula + ": " +
               e.what());
    }
  }

  // bounded existential search: verified witnesses and honest unknowns
  {
    ++res.cases;
    const auto engine = makeModel("engine:p1");
    const Formula f = parseFormula("exists y: y + psi(y) = 1");
    const ExistsResult r = boundedExists(*engine, f);
    if (!r.found)
      res.fail("integration witness not found over the seed engine");
    else if (engine->print(*r.witness) != "-1*b2")
      res.fail("unexpected witness " + engine->print(*r.witness));
  }
  {
    ++res.cases;
    const auto engine = makeModel("engine:p1");
    const ExistsResult r = boundedExists(*engine, parseFormula("exists y: psi(y) = sc(2,1)"));
    if (r.found)
      res.fail("found a witness for an unsatisfiable psi-value");
  }
  {
    ++res.cases;
    const auto m = makeModel("p1");
    const ExistsResult r = boundedExists(*m, parseFormula("exists y: y = 0"));
    if (!r.found || !m->isZero(*r.witness))
      res.fail("trivial witness search failed");
  }
  {
    ++res.cases;
    const auto m = makeModel("logm");
    const ExistsResult r = boundedExists(*m, parseFormula("exists y: y + psi(y) = 1"));
    if (!r.found)
      res.fail("log-model integration witness not found");
  }

  // scalar-formula recognition
  {
    ++res.cases;
    const auto info = isScalarFormula(parseFormula("(y : z) * (y : z) < 1 + 1"));
    if (!info.isScalar || info.scalarTerms.size() != 1)
      res.fail("colon square not recognized as a scalar formula");
    if (!isScalarFormula(parseFormula("psi(y) = z")).isScalar &&
        !isScalarFormula(parseFormula("P(y)")).isScalar) {
      // both correctly rejected
    } else {
      res.fail("vector formulas accepted as scalar formulas");
    }
  }

  res.seconds = timer.elapsed();
  return res;
}

// ---------------------------------------------------------------------------
// criterion 9: scalar extension

SuiteResult scalarExtensionSuite(std::uint64_t seed, std::size_t cases) {
  Timer timer;
  SuiteResult res;
  res.name = "scalarext";
  Rng rng(seed);

  // the order rule on the extended space
  {
    const Presentation p2q2 = scalarExtend(presentationP2(), 2).extended;
    const VecElement probe =
        VecElement::unitVector("b1").scaled(ScalarValue::quad(-1, 1, 2)); // (√2 - 1) b1
    if (probe.signum(p2q2.ctx()) <= 0)
      res.fail("(sqrt2)*b1 - b1 is not positive after base change");
  }

  for (std::size_t i = 0; i < cases; ++i) {
    ++res.cases;
    // Ψ and the trichotomy verdict survive the base change
    const Presentation p = randomPresentation(rng, 6, /*allowQuad=*/false);
    const ExtensionResult ext = scalarExtend(p, 2);
    std::string why;
    if (!verifyEmbedding(p, ext, sampleElements(p, rng, 20), &why)) {
      res.fail("scalar extension embedding: " + why);
      continue;
    }
    const Trichotomy before = p.classifyTrichotomy();
    const Trichotomy after = ext.extended.classifyTrichotomy();
    if (before.kind != after.kind || *before.witness != *after.witness) {
      res.fail("trichotomy verdict changed under base change");
      continue;
    }

    // separation: a genuinely new element keeps its distance from the
    // whole rational group
    LogElement gammaStar = randomLogElement(rng, 6, /*radicand=*/2);
    if (gammaStar.isRationalElement())
      gammaStar = gammaStar + LogElement::e(3, ScalarValue::quad(0, 1, 2));
    unsigned firstIrrational = 0;
    for (const auto& [k, c] : gammaStar.support()) {
      if (!c.isRational()) {
        firstIrrational = k;
        break;
      }
    }
    const LogElement eps = -LogElement::e(firstIrrational + 1); // positive, class below
    for (int t = 0; t < 100; ++t) {
      const LogElement gamma = randomLogElement(rng, 6, 0);
      LogElement diff = gammaStar - gamma;
      if (diff.signum() < 0)
        diff = -diff;
      if (!(eps < diff)) {
        res.fail("separation fails at " + gammaStar.str() + " vs " + gamma.str());
        break;
      }
    }
    // the gap stays a gap when the scalars of the gap model extend:
    // λ is still squeezed between Ψ and (Γ^>)' computed with
    // irrational coefficients
    const GapLogElement lambda = GapLogElement::lambda();
    LogElement delta = randomLogElement(rng, 5, 2);
    if (!delta.isZero()) {
      if (delta.signum() < 0)
        delta = -delta;
      if (gapCompare(GapLogElement::pure(*psiL(delta)), lambda) != Ordering::LT)
        res.fail("Psi escaped above lambda after scalar extension");
      if (gapCompare(lambda, GapLogElement::pure(*deriveL(delta))) != Ordering::LT)
        res.fail("lambda escaped above (Gamma^>)' after scalar extension");
    }
  }
  res.seconds = timer.elapsed();
  return res;
}

std::vector<SuiteResult> runAllSuites(std::uint64_t seed, double scale) {
  const auto scaled = [&](std::size_t n) {
    return std::max<std::size_t>(1, static_cast<std::size_t>(static_cast<double>(n) * scale));
  };
  std::vector<SuiteResult> out;
  out.push_back(axiomSuite(seed + 1, scaled(10000)));
  out.push_back(extensionSuite(seed + 2, scaled(1000)));
  out.push_back(closureSuite(seed + 3, scaled(1000)));
  out.push_back(logModelSuite(seed + 4, scaled(10000)));
  out.push_back(transExampleSuite(seed + 5, scaled(10000)));
  out.push_back(classifierSuite(seed + 6));
  out.push_back(solverSuite(seed + 7, scaled(10000), scaled(1000)));
  out.push_back(langSuite(seed + 8));
  out.push_back(scalarExtensionSuite(seed + 9, scaled(1000)));
  return out;
}

} // namespace hcouple::fuzz
