#include "hcouple/logmodel.hpp"

#include <sstream>

#include "hcouple/errors.hpp"

namespace hcouple {

LogElement LogElement::e(unsigned k, ScalarValue coeff) {
  LogElement out;
  if (!coeff.isZero())
    out.coeff_[k] = std::move(coeff);
  return out;
}

LogElement LogElement::sigma(unsigned k) {
  LogElement out;
  for (unsigned j = 0; j <= k; ++j)
    out.coeff_[j] = ScalarValue(-1);
  return out;
}

ScalarValue LogElement::coeff(unsigned k) const {
  auto it = coeff_.find(k);
  return it == coeff_.end() ? ScalarValue() : it->second;
}

unsigned LogElement::leadingIndex() const {
  if (isZero())
    throw FormatError("zero log element has no leading index");
  return coeff_.begin()->first;
}

unsigned LogElement::maxIndex() const {
  if (isZero())
    throw FormatError("zero log element has no max index");
  return coeff_.rbegin()->first;
}

int LogElement::signum() const {
  // e_k < 0, so the sign is the negated sign of the leading coefficient
  if (isZero())
    return 0;
  return -coeff_.begin()->second.signum();
}

LogElement LogElement::operator+(const LogElement& o) const {
  LogElement out = *this;
  for (const auto& [k, c] : o.coeff_) {
    auto it = out.coeff_.find(k);
    if (it == out.coeff_.end()) {
      out.coeff_.emplace(k, c);
    } else {
      it->second += c;
      if (it->second.isZero())
        out.coeff_.erase(it);
    }
  }
  return out;
}

LogElement LogElement::operator-() const {
  LogElement out;
  for (const auto& [k, c] : coeff_)
    out.coeff_.emplace(k, -c);
  return out;
}

LogElement LogElement::operator-(const LogElement& o) const { return *this + (-o); }

LogElement LogElement::scaled(const ScalarValue& c) const {
  LogElement out;
  if (c.isZero())
    return out;
  for (const auto& [k, q] : coeff_)
    out.coeff_.emplace(k, q * c);
  return out;
}

bool LogElement::isRationalElement() const {
  for (const auto& [k, c] : coeff_) {
    (void)k;
    if (!c.isRational())
      return false;
  }
  return true;
}

std::string LogElement::str() const {
  if (isZero())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : coeff_) {
    if (!first)
      os << " + ";
    first = false;
    if (c.isOne())
      os << "e" << k;
    else
      os << c.str() << "*e" << k;
  }
  return os.str();
}

int logClassCompare(const LogElement& a, const LogElement& b) {
  if (a.isZero() && b.isZero())
    return 0;
  if (a.isZero())
    return -1;
  if (b.isZero())
    return 1;
  const unsigned la = a.leadingIndex(), lb = b.leadingIndex();
  // smaller index = larger class
  return la == lb ? 0 : (la > lb ? -1 : 1);
}

std::optional<LogElement> psiL(const LogElement& a) {
  if (a.isZero())
    return std::nullopt;
  return LogElement::sigma(a.leadingIndex());
}

std::optional<LogElement> deriveL(const LogElement& a) {
  const auto p = psiL(a);
  if (!p)
    return std::nullopt;
  return a + *p;
}

LogElement integrateL(const LogElement& gamma) {
  const unsigned cap = gamma.isZero() ? 1 : gamma.maxIndex() + 2;
  for (unsigned k = 0; k < cap; ++k) {
    const LogElement alpha = gamma - LogElement::sigma(k);
    if (!alpha.isZero() && alpha.leadingIndex() == k) {
      if (deriveL(alpha) != std::optional<LogElement>(gamma))
        throw InternalInvariantViolation("integration postcondition failed at class " +
                                         std::to_string(k));
      return alpha;
    }
  }
  throw IntegrationGap("no class accepts the integral of " + gamma.str() +
                       "; the log-monomial couple must have asymptotic integration");
}

bool cutMemberL(const LogElement& a) { return integrateL(a).signum() < 0; }

std::string GapLogElement::str() const {
  if (gapCoeff.isZero())
    return base.str();
  std::string lam = gapCoeff.isOne() ? "lambda" : gapCoeff.str() + "*lambda";
  return base.isZero() ? lam : base.str() + " + " + lam;
}

int gapSignum(const GapLogElement& a) {
  if (a.gapCoeff.isZero())
    return a.base.signum();
  // sign of base + c·λ, c ≠ 0: compare λ against -base/c, and
  // λ > γ  ⟺  integrateL(γ) < 0
  const int cs = a.gapCoeff.signum();
  const LogElement threshold = a.base.scaled(ScalarValue(-1) / a.gapCoeff);
  const bool lambdaAbove = integrateL(threshold).signum() < 0;
  return lambdaAbove ? cs : -cs;
}

Ordering gapCompare(const GapLogElement& a, const GapLogElement& b) {
  return orderingOfInt(gapSignum(a - b));
}

std::optional<unsigned> gapClassIndex(const GapLogElement& a) {
  if (a.gapCoeff.isZero()) {
    if (a.base.isZero())
      return std::nullopt;
    return a.base.leadingIndex();
  }
  // λ behaves like -(e_0 + e_1 + ...): the leading formal coefficient of
  // base + c·λ at index k is base_k - c, so the class is the least k
  // where base_k != c... with the sign convention that λ contributes -c
  // to every e_k. The search is finite since base has finite support.
  const unsigned cap = a.base.isZero() ? 0 : a.base.maxIndex();
  for (unsigned k = 0; k <= cap + 1; ++k) {
    if (a.base.coeff(k) != a.gapCoeff)
      return k;
  }
  throw InternalInvariantViolation("gap element with no leading class");
}

int gapClassCompare(const GapLogElement& a, const GapLogElement& b) {
  const auto ia = gapClassIndex(a), ib = gapClassIndex(b);
  if (!ia && !ib)
    return 0;
  if (!ia)
    return -1;
  if (!ib)
    return 1;
  return *ia == *ib ? 0 : (*ia > *ib ? -1 : 1);
}

std::optional<LogElement> psiGap(const GapLogElement& a) {
  const auto j = gapClassIndex(a);
  if (!j)
    return std::nullopt;
  return LogElement::sigma(*j);
}

bool gapCutMember(const GapLogElement& a) {
  // P = (≤ λ)
  return gapSignum(a - GapLogElement::lambda()) <= 0;
}

int GapRemovedLogModel::signum(const GapRemovedElement& a) const {
  // lexicographic: α lies strictly between 0 and every positive element
  // of Γ_L + Qλ (resp. the mirror image for the negative variant)
  const int hs = gapSignum(a.head);
  if (hs != 0)
    return hs;
  const int as = a.alphaCoeff.signum();
  return alphaPositive_ ? as : -as;
}

Ordering GapRemovedLogModel::compare(const GapRemovedElement& a, const GapRemovedElement& b) const {
  return orderingOfInt(signum(a - b));
}

std::optional<GapRemovedElement> GapRemovedLogModel::psi(const GapRemovedElement& a) const {
  if (!a.head.isZero()) {
    const auto p = psiGap(a.head);
    return GapRemovedElement::of(GapLogElement::pure(*p));
  }
  if (!a.alphaCoeff.isZero())
    return maxPsi();
  return std::nullopt;
}

GapRemovedElement GapRemovedLogModel::maxPsi() const {
  // λ - α
  return GapRemovedElement{GapLogElement::lambda(), ScalarValue(-1)};
}

std::optional<GapRemovedElement> GapRemovedLogModel::derive(const GapRemovedElement& a) const {
  const auto p = psi(a);
  if (!p)
    return std::nullopt;
  return a + *p;
}

bool GapRemovedLogModel::cutMember(const GapRemovedElement& a) const {
  return signum(a - maxPsi()) <= 0;
}

} // namespace hcouple
