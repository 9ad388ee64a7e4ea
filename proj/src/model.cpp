#include "hcouple/model.hpp"

#include <cctype>

#include "hcouple/serialize.hpp"

namespace hcouple {

namespace {

const VecElement& asVec(const MValue& v) {
  if (const auto* p = std::get_if<VecElement>(&v))
    return *p;
  throw FormatError("element does not belong to a presentation model");
}

const LogElement& asLog(const MValue& v) {
  if (const auto* p = std::get_if<LogElement>(&v))
    return *p;
  throw FormatError("element does not belong to the log-monomial model");
}

const GapLogElement& asGap(const MValue& v) {
  if (const auto* p = std::get_if<GapLogElement>(&v))
    return *p;
  throw FormatError("element does not belong to the gap-extended model");
}

const TransValue& asTrans(const MValue& v) {
  if (const auto* p = std::get_if<TransValue>(&v))
    return *p;
  throw FormatError("element does not belong to the transmonomial model");
}

ScalarValue randomRational(Rng& rng, int maxAbs = 9) {
  std::uniform_int_distribution<int> num(-maxAbs, maxAbs);
  std::uniform_int_distribution<int> den(1, 4);
  return ScalarValue(Rational(num(rng), den(rng)));
}

// parses "3*b1 + 1/2*b2 - c" style linear combinations; idents resolve
// through the callback
template <typename T, typename Resolve, typename Add, typename Scale>
T parseLinearCombo(const std::string& text, const T& zero, Resolve resolve, Add add, Scale scale) {
  T out = zero;
  std::size_t pos = 0;
  auto skipWs = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  };
  skipWs();
  if (pos < text.size() && text[pos] == '0' && pos + 1 == text.size())
    return out;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  while (pos < text.size()) {
    skipWs();
    // optional coefficient
    ScalarValue coeff(negative ? -1 : 1);
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/'))
      ++pos;
    bool zeroTerm = false;
    if (pos > start) {
      const std::string run = text.substr(start, pos - start);
      skipWs();
      if (pos < text.size() && text[pos] == '*') {
        coeff = coeff * ScalarValue::parse(run);
        ++pos;
        skipWs();
      } else if (run == "1") {
        pos = start; // the bare "1" names the unit, not a coefficient
      } else if (run == "0") {
        zeroTerm = true; // contributes nothing
      } else {
        throw FormatError("expected '*ident' after coefficient in '" + text + "'");
      }
    }
    if (!zeroTerm) {
      start = pos;
      while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos]))))
        ++pos;
      if (pos == start)
        throw FormatError("expected an identifier in '" + text + "'");
      out = add(out, scale(resolve(text.substr(start, pos - start)), coeff));
    }
    skipWs();
    if (pos == text.size())
      break;
    if (text[pos] == '+')
      negative = false;
    else if (text[pos] == '-')
      negative = true;
    else
      throw FormatError("expected '+' or '-' in '" + text + "'");
    ++pos;
  }
  return out;
}

} // namespace

std::string mvalueStr(const MValue& v) {
  return std::visit([](const auto& x) { return x.str(); }, v);
}

std::vector<MValue> CoupleModel::witnessGrid(std::size_t budget) const {
  std::vector<MValue> grid;
  grid.push_back(zero());
  if (const auto one = constant("1")) {
    grid.push_back(*one);
    grid.push_back(negate(*one));
  }
  if (grid.size() > budget)
    grid.resize(budget);
  return grid;
}

// ----- PresentationModel -----

PresentationModel::PresentationModel(Presentation p, std::string name)
    : fixed_(std::move(p)), name_(std::move(name)) {}

PresentationModel::PresentationModel(std::shared_ptr<ClosureEngine> engine, std::string name)
    : engine_(std::move(engine)), name_(std::move(name)) {}

const Presentation& PresentationModel::stage() const {
  return engine_ ? engine_->stage() : fixed_;
}

std::optional<MValue> PresentationModel::constant(const std::string& name) const {
  if (name == "1") {
    if (stage().isTrivial())
      return std::nullopt;
    return MValue(stage().unit());
  }
  if (stage().ctx().contains(name))
    return MValue(VecElement::unitVector(name));
  return std::nullopt;
}

MValue PresentationModel::add(const MValue& a, const MValue& b) const {
  return asVec(a) + asVec(b);
}

MValue PresentationModel::negate(const MValue& a) const { return -asVec(a); }

MValue PresentationModel::scalarMul(const ScalarValue& c, const MValue& a) const {
  return asVec(a).scaled(c);
}

int PresentationModel::signum(const MValue& a) const { return asVec(a).signum(stage().ctx()); }

std::optional<MValue> PresentationModel::psi(const MValue& a) const {
  const ExtVec r = stage().psi(ExtVec(asVec(a)));
  if (r.isInf())
    return std::nullopt;
  return MValue(r.finite());
}

bool PresentationModel::cutMember(const MValue& a) const { return stage().cutMember(asVec(a)); }

int PresentationModel::classCompare(const MValue& a, const MValue& b) const {
  const auto& ctx = stage().ctx();
  return static_cast<int>(
      hcouple::classCompare(archClass(asVec(a), ctx), archClass(asVec(b), ctx), ctx));
}

std::optional<ScalarValue> PresentationModel::colon(const MValue& a, const MValue& b) const {
  const ExtScalar r = colonDiv(ExtVec(asVec(a)), ExtVec(asVec(b)), stage().ctx());
  if (r.isInf())
    return std::nullopt;
  return r.finite();
}

Trichotomy PresentationModel::classify() const { return stage().classifyTrichotomy(); }

std::optional<MValue> PresentationModel::integrate(const MValue& gamma) const {
  if (!engine_)
    return std::nullopt;
  return MValue(engine_->integrate(asVec(gamma)));
}

std::optional<MValue> PresentationModel::elementBelowClass(const MValue& a) const {
  const VecElement& v = asVec(a);
  const auto& ctx = stage().ctx();
  const std::size_t rank = v.isZero() ? 0 : ctx.rank(v.leadingId(ctx)) + 1;
  if (v.isZero() || rank >= ctx.size())
    return std::nullopt;
  return MValue(VecElement::unitVector(ctx.at(rank)));
}

MValue PresentationModel::sampleElement(Rng& rng) const {
  const auto& ctx = stage().ctx();
  VecElement v;
  if (ctx.size() == 0)
    return MValue(v);
  std::uniform_int_distribution<std::size_t> pick(0, ctx.size() - 1);
  std::uniform_int_distribution<int> width(1, static_cast<int>(ctx.size()));
  const int terms = width(rng);
  for (int t = 0; t < terms; ++t)
    v = v.withCoeff(ctx.at(pick(rng)), randomRational(rng));
  return MValue(v);
}

MValue PresentationModel::parseValue(const std::string& text) const {
  if (!text.empty() && text.front() == '[')
    return MValue(vecFromJson(Json::parse(text)));
  const auto resolve = [&](const std::string& ident) -> VecElement {
    if (ident == "1" && !stage().isTrivial())
      return stage().unit();
    if (!stage().ctx().contains(ident))
      throw UnknownConstant(ident);
    return VecElement::unitVector(ident);
  };
  return MValue(parseLinearCombo<VecElement>(
      text, VecElement(), resolve, [](const VecElement& a, const VecElement& b) { return a + b; },
      [](const VecElement& a, const ScalarValue& c) { return a.scaled(c); }));
}

std::vector<MValue> PresentationModel::witnessGrid(std::size_t budget) const {
  std::vector<MValue> grid;
  grid.push_back(zero());
  for (const auto& id : stage().ctx().order()) {
    grid.push_back(MValue(VecElement::unitVector(id)));
    grid.push_back(MValue(-VecElement::unitVector(id)));
  }
  for (const auto& p : stage().psiValues()) {
    grid.push_back(MValue(p));
    grid.push_back(MValue(-p));
    if (engine_)
      grid.push_back(MValue(engine_->integrate(p)));
  }
  if (!stage().isTrivial()) {
    grid.push_back(MValue(stage().unit().scaled(ScalarValue(2))));
    grid.push_back(MValue(stage().unit().scaled(ScalarValue(Rational(1, 2)))));
  }
  if (grid.size() > budget)
    grid.resize(budget);
  return grid;
}

// ----- LogModel -----

namespace {

std::optional<unsigned> parseEk(const std::string& name) {
  if (name.size() < 2 || name[0] != 'e')
    return std::nullopt;
  for (std::size_t i = 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i])))
      return std::nullopt;
  return static_cast<unsigned>(std::stoul(name.substr(1)));
}

LogElement resolveLogIdent(const std::string& ident) {
  if (ident == "1")
    return LogElement::e(0, ScalarValue(-1));
  if (const auto k = parseEk(ident))
    return LogElement::e(*k);
  throw UnknownConstant(ident);
}

} // namespace

std::optional<MValue> LogModel::constant(const std::string& name) const {
  if (name == "1")
    return MValue(LogElement::e(0, ScalarValue(-1)));
  if (const auto k = parseEk(name))
    return MValue(LogElement::e(*k));
  return std::nullopt;
}

MValue LogModel::add(const MValue& a, const MValue& b) const { return asLog(a) + asLog(b); }
MValue LogModel::negate(const MValue& a) const { return -asLog(a); }
MValue LogModel::scalarMul(const ScalarValue& c, const MValue& a) const {
  return asLog(a).scaled(c);
}
int LogModel::signum(const MValue& a) const { return asLog(a).signum(); }

std::optional<MValue> LogModel::psi(const MValue& a) const {
  const auto p = psiL(asLog(a));
  if (!p)
    return std::nullopt;
  return MValue(*p);
}

bool LogModel::cutMember(const MValue& a) const { return cutMemberL(asLog(a)); }

int LogModel::classCompare(const MValue& a, const MValue& b) const {
  return logClassCompare(asLog(a), asLog(b));
}

std::optional<ScalarValue> LogModel::colon(const MValue& a, const MValue& b) const {
  const LogElement& x = asLog(a);
  const LogElement& y = asLog(b);
  if (y.isZero())
    return std::nullopt;
  if (x.isZero())
    return ScalarValue(0);
  const int cc = logClassCompare(x, y);
  if (cc > 0)
    return std::nullopt;
  if (cc < 0)
    return ScalarValue(0);
  return x.coeff(x.leadingIndex()) / y.coeff(y.leadingIndex());
}

Trichotomy LogModel::classify() const {
  return Trichotomy{TrichotomyKind::AsymptoticIntegration, std::nullopt};
}

std::optional<MValue> LogModel::integrate(const MValue& gamma) const {
  return MValue(integrateL(asLog(gamma)));
}

std::optional<MValue> LogModel::elementBelowClass(const MValue& a) const {
  const LogElement& v = asLog(a);
  if (v.isZero())
    return std::nullopt; // nothing sits below the zero class
  return MValue(LogElement::e(v.maxIndex() + 1, ScalarValue(-1)));
}

MValue LogModel::sampleElement(Rng& rng) const {
  std::uniform_int_distribution<unsigned> pick(0, 7);
  std::uniform_int_distribution<int> width(1, 4);
  LogElement v;
  const int terms = width(rng);
  for (int t = 0; t < terms; ++t)
    v = v + LogElement::e(pick(rng), randomRational(rng));
  return MValue(v);
}

MValue LogModel::parseValue(const std::string& text) const {
  return MValue(parseLinearCombo<LogElement>(
      text, LogElement(), resolveLogIdent,
      [](const LogElement& a, const LogElement& b) { return a + b; },
      [](const LogElement& a, const ScalarValue& c) { return a.scaled(c); }));
}

// ----- GapLogModel -----

std::optional<MValue> GapLogModel::constant(const std::string& name) const {
  if (name == "lambda")
    return MValue(GapLogElement::lambda());
  if (name == "1")
    return MValue(GapLogElement::pure(LogElement::e(0, ScalarValue(-1))));
  if (const auto k = parseEk(name))
    return MValue(GapLogElement::pure(LogElement::e(*k)));
  return std::nullopt;
}

MValue GapLogModel::add(const MValue& a, const MValue& b) const { return asGap(a) + asGap(b); }
MValue GapLogModel::negate(const MValue& a) const { return -asGap(a); }
MValue GapLogModel::scalarMul(const ScalarValue& c, const MValue& a) const {
  return asGap(a).scaled(c);
}
int GapLogModel::signum(const MValue& a) const { return gapSignum(asGap(a)); }

std::optional<MValue> GapLogModel::psi(const MValue& a) const {
  const auto p = psiGap(asGap(a));
  if (!p)
    return std::nullopt;
  return MValue(GapLogElement::pure(*p));
}

bool GapLogModel::cutMember(const MValue& a) const { return gapCutMember(asGap(a)); }

int GapLogModel::classCompare(const MValue& a, const MValue& b) const {
  return gapClassCompare(asGap(a), asGap(b));
}

std::optional<ScalarValue> GapLogModel::colon(const MValue& a, const MValue& b) const {
  const GapLogElement& x = asGap(a);
  const GapLogElement& y = asGap(b);
  if (y.isZero())
    return std::nullopt;
  if (x.isZero())
    return ScalarValue(0);
  const int cc = gapClassCompare(x, y);
  if (cc > 0)
    return std::nullopt;
  if (cc < 0)
    return ScalarValue(0);
  // equal classes [e_j]: the formal coefficient at e_j is base_j - gapCoeff
  const unsigned j = *gapClassIndex(x);
  const ScalarValue cx = x.base.coeff(j) - x.gapCoeff;
  const ScalarValue cy = y.base.coeff(j) - y.gapCoeff;
  return cx / cy;
}

Trichotomy GapLogModel::classify() const {
  return Trichotomy{TrichotomyKind::HasGap, std::nullopt};
}

std::optional<bool> GapLogModel::cosetClassesInBase(const MValue& a) const {
  // Every class of Γ_L + Qλ is a Γ_L class: the base is dense in the
  // extension, concretely because λ + e_0 + ... + e_j descends through
  // the classes [e_{j+1}]. So any coset of the base keeps base classes.
  if (asGap(a).isPure())
    return std::nullopt;
  return true;
}

MValue GapLogModel::sampleElement(Rng& rng) const {
  LogModel base;
  GapLogElement v{asLog(base.sampleElement(rng)), ScalarValue()};
  std::uniform_int_distribution<int> lam(0, 2);
  if (lam(rng) == 0)
    v.gapCoeff = randomRational(rng);
  return MValue(v);
}

MValue GapLogModel::parseValue(const std::string& text) const {
  const auto resolve = [](const std::string& ident) -> GapLogElement {
    if (ident == "lambda")
      return GapLogElement::lambda();
    return GapLogElement::pure(resolveLogIdent(ident));
  };
  return MValue(parseLinearCombo<GapLogElement>(
      text, GapLogElement{}, resolve,
      [](const GapLogElement& a, const GapLogElement& b) { return a + b; },
      [](const GapLogElement& a, const ScalarValue& c) { return a.scaled(c); }));
}

// ----- TransModel -----

std::optional<MValue> TransModel::constant(const std::string& name) const {
  if (name == "1")
    return MValue(TransValue::unit());
  return std::nullopt;
}

MValue TransModel::add(const MValue& a, const MValue& b) const { return asTrans(a) + asTrans(b); }
MValue TransModel::negate(const MValue& a) const { return -asTrans(a); }
MValue TransModel::scalarMul(const ScalarValue& c, const MValue& a) const {
  return asTrans(a).scaled(c);
}
int TransModel::signum(const MValue& a) const { return transSignum(asTrans(a)); }

std::optional<MValue> TransModel::psi(const MValue& a) const {
  const auto p = psiT(asTrans(a));
  if (!p)
    return std::nullopt;
  return MValue(*p);
}

bool TransModel::cutMember(const MValue& a) const { return cutMemberT(asTrans(a)); }

int TransModel::classCompare(const MValue& a, const MValue& b) const {
  return transClassCompare(asTrans(a), asTrans(b));
}

std::optional<ScalarValue> TransModel::colon(const MValue& a, const MValue& b) const {
  return transColon(asTrans(a), asTrans(b));
}

Trichotomy TransModel::classify() const {
  return Trichotomy{TrichotomyKind::AsymptoticIntegration, std::nullopt};
}

std::optional<MValue> TransModel::integrate(const MValue& gamma) const {
  return MValue(integrateT(asTrans(gamma)));
}

std::optional<MValue> TransModel::elementBelowClass(const MValue& a) const {
  const TransValue& v = asTrans(a);
  if (v.isZero())
    return std::nullopt; // nothing sits below the zero class
  unsigned depth = 0;
  for (const auto& [k, q] : v.mono.logPart()) {
    (void)q;
    depth = std::max(depth, k + 1);
  }
  return MValue(TransValue::of(TransMonomial::ell(depth + 1, ScalarValue(-1))));
}

MValue TransModel::sampleElement(Rng& rng) const {
  // pure log-part samples plus occasional height-1/2 exponentials
  std::uniform_int_distribution<int> shape(0, 3);
  std::uniform_int_distribution<unsigned> pick(0, 3);
  TransMonomial m;
  const int s = shape(rng);
  const int terms = 1 + (s % 2);
  for (int t = 0; t < terms; ++t) {
    ScalarValue q = randomRational(rng);
    if (q.isZero())
      q = ScalarValue(1);
    m = m.times(TransMonomial::ell(pick(rng), q));
  }
  if (s == 3) {
    ScalarValue c = randomRational(rng, 3);
    if (c.isZero())
      c = ScalarValue(1);
    m = m.times(
        TransMonomial::exp(MultiSeries::single(TransMonomial::x(ScalarValue(c.abs())), c)));
  }
  return MValue(TransValue::of(m));
}

MValue TransModel::parseValue(const std::string& text) const {
  return MValue(TransValue::of(parseMonomial(text, heightBound_)));
}

// ----- registry -----

bool isDefinablyClosedCriterion(const CoupleModel& m) { return m.hasAsymptoticIntegration(); }

Presentation presentationP2() { return extendGrounded(Presentation::seedP1()).extended; }

std::shared_ptr<CoupleModel> makeModel(const std::string& spec) {
  if (spec == "p1")
    return std::make_shared<PresentationModel>(Presentation::seedP1(), "p1");
  if (spec == "p2")
    return std::make_shared<PresentationModel>(presentationP2(), "p2");
  if (spec == "logm")
    return std::make_shared<LogModel>();
  if (spec == "gap")
    return std::make_shared<GapLogModel>();
  if (spec == "trans")
    return std::make_shared<TransModel>();
  if (spec == "trivial>")
    return std::make_shared<PresentationModel>(
        Presentation(BasisContext(std::vector<BasisId>{}), PsiTable{},
                     HCutSpec::withGap(VecElement()), VecElement()),
        "trivial>");
  if (spec == "trivial<")
    return std::make_shared<PresentationModel>(
        Presentation(BasisContext(std::vector<BasisId>{}), PsiTable{}, HCutSpec::psiDown(),
                     VecElement()),
        "trivial<");
  if (spec.rfind("engine:", 0) == 0) {
    const std::string inner = spec.substr(7);
    Presentation seed;
    if (inner == "p1")
      seed = Presentation::seedP1();
    else if (inner == "p2")
      seed = presentationP2();
    else
      seed = loadPresentationFile(inner);
    return std::make_shared<PresentationModel>(std::make_shared<ClosureEngine>(std::move(seed)),
                                               "engine:" + inner);
  }
  return std::make_shared<PresentationModel>(loadPresentationFile(spec), spec);
}

} // namespace hcouple
