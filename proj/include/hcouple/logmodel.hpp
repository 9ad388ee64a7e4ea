#ifndef HCOUPLE_LOGMODEL_HPP
#define HCOUPLE_LOGMODEL_HPP

#include <map>
#include <optional>
#include <string>

#include "hcouple/ordering.hpp"
#include "hcouple/scalar.hpp"

namespace hcouple {

/// An element of the value group of logarithmic monomials: a finite sum
/// Σ q_k e_k where e_k is the value of the k-th iterated logarithm
/// (e_0 = v(x), e_{k+1} = v(log ℓ_k)). Every e_k is negative, classes
/// satisfy [e_0] > [e_1] > ..., and there is no least class. The leading
/// term is the one with the least index; an element is positive iff its
/// leading coefficient is negative.
class LogElement {
public:
  LogElement() = default;

  static LogElement e(unsigned k, ScalarValue coeff = ScalarValue(1));

  /// σ_k = -(e_0 + ... + e_k), the ψ-value of the class [e_k].
  static LogElement sigma(unsigned k);

  bool isZero() const { return coeff_.empty(); }
  const std::map<unsigned, ScalarValue>& support() const { return coeff_; }
  ScalarValue coeff(unsigned k) const;

  /// Least index in the support (the leading class). Throws on zero.
  unsigned leadingIndex() const;
  unsigned maxIndex() const;

  int signum() const;

  LogElement operator+(const LogElement& o) const;
  LogElement operator-(const LogElement& o) const;
  LogElement operator-() const;
  LogElement scaled(const ScalarValue& c) const;

  bool operator==(const LogElement& o) const { return coeff_ == o.coeff_; }
  bool operator!=(const LogElement& o) const { return !(*this == o); }
  bool operator<(const LogElement& o) const { return (*this - o).signum() < 0; }

  /// True when every coefficient is rational (lies in Q, not just
  /// Q(sqrt d)).
  bool isRationalElement() const;

  std::string str() const;

private:
  std::map<unsigned, ScalarValue> coeff_; // no zero coefficients stored
};

/// [|a|] vs [|b|]: smaller leading index = larger class; zero smallest.
int logClassCompare(const LogElement& a, const LogElement& b);

/// ψ of the log-monomial couple: ∞ on 0, otherwise σ_k for the leading
/// index k. Returned as optional (nullopt = ∞).
std::optional<LogElement> psiL(const LogElement& a);

/// γ' = γ + ψ(γ); nullopt = ∞ (only for γ = 0).
std::optional<LogElement> deriveL(const LogElement& a);

/// The unique α with α + ψ(α) = γ. Total: the couple has asymptotic
/// integration. The search runs over candidate classes
/// k ≤ maxIndex(γ)+1 and the postcondition is rechecked exactly;
/// IntegrationGap would signal a broken invariant and is never expected.
LogElement integrateL(const LogElement& gamma);

/// Membership in the only H-cut Ψ↓ = {γ : integrateL(γ) < 0}.
bool cutMemberL(const LogElement& a);

/// An element of Γ_L + Q·λ where λ is the adjoined gap,
/// Ψ < λ < (Γ^>)'. The order is decided by the sign of the integral:
/// λ > γ exactly when integrateL(γ) < 0.
struct GapLogElement {
  LogElement base;
  ScalarValue gapCoeff;

  bool isZero() const { return base.isZero() && gapCoeff.isZero(); }
  bool isPure() const { return gapCoeff.isZero(); }

  GapLogElement operator+(const GapLogElement& o) const { return {base + o.base, gapCoeff + o.gapCoeff}; }
  GapLogElement operator-(const GapLogElement& o) const { return {base - o.base, gapCoeff - o.gapCoeff}; }
  GapLogElement operator-() const { return {-base, -gapCoeff}; }
  GapLogElement scaled(const ScalarValue& c) const { return {base.scaled(c), gapCoeff * c}; }

  bool operator==(const GapLogElement& o) const {
    return base == o.base && gapCoeff == o.gapCoeff;
  }
  bool operator!=(const GapLogElement& o) const { return !(*this == o); }

  static GapLogElement lambda() { return {LogElement{}, ScalarValue(1)}; }
  static GapLogElement pure(LogElement g) { return {std::move(g), ScalarValue()}; }

  std::string str() const;
};

int gapSignum(const GapLogElement& a);
Ordering gapCompare(const GapLogElement& a, const GapLogElement& b);

/// Leading class of a mixed element, as the index j of the Γ_L class
/// [e_j] it falls into. λ behaves like -(e_0 + e_1 + ...) for class
/// purposes, so j is the least k whose formal coefficient differs from
/// -gapCoeff... i.e. the least k with base_k != gapCoeff. Every class of
/// the extension is a Γ_L class (the group stays dense in itself).
/// nullopt = zero element.
std::optional<unsigned> gapClassIndex(const GapLogElement& a);

int gapClassCompare(const GapLogElement& a, const GapLogElement& b);

/// ψ on the gap extension: σ_j at the class index; Ψ is unchanged.
std::optional<LogElement> psiGap(const GapLogElement& a);

/// Cut membership for the gap-declared triple, P = (≤ λ).
bool gapCutMember(const GapLogElement& a);

/// One step of gap removal on the concrete model: Γ_L + Qλ + Qα with
/// α' = λ, α tiny of the requested sign. ψ gains the new bottom class
/// value λ - α, the new Ψ-set is Ψ ∪ {λ - α} with λ - α as maximum, and
/// the cut collapses to Ψ↓.
struct GapRemovedElement {
  GapLogElement head; // the Γ_L + Qλ part
  ScalarValue alphaCoeff;

  GapRemovedElement operator+(const GapRemovedElement& o) const {
    return {head + o.head, alphaCoeff + o.alphaCoeff};
  }
  GapRemovedElement operator-() const { return {-head, -alphaCoeff}; }
  GapRemovedElement operator-(const GapRemovedElement& o) const { return *this + (-o); }
  GapRemovedElement scaled(const ScalarValue& c) const { return {head.scaled(c), alphaCoeff * c}; }
  bool operator==(const GapRemovedElement& o) const {
    return head == o.head && alphaCoeff == o.alphaCoeff;
  }

  static GapRemovedElement alpha() { return {GapLogElement{}, ScalarValue(1)}; }
  static GapRemovedElement of(GapLogElement g) { return {std::move(g), ScalarValue()}; }
};

class GapRemovedLogModel {
public:
  explicit GapRemovedLogModel(bool alphaPositive) : alphaPositive_(alphaPositive) {}

  bool alphaPositive() const { return alphaPositive_; }

  int signum(const GapRemovedElement& a) const;
  Ordering compare(const GapRemovedElement& a, const GapRemovedElement& b) const;

  /// ψ^α: old value on elements with a nonzero Γ_L + Qλ part, λ - α on
  /// the pure-α line, ∞ at 0. The value is expressed in the extension.
  std::optional<GapRemovedElement> psi(const GapRemovedElement& a) const;

  /// derive(α) = λ exactly; max Ψ^α = λ - α.
  GapRemovedElement maxPsi() const;
  std::optional<GapRemovedElement> derive(const GapRemovedElement& a) const;

  /// New cut = Ψ^α↓ = (≤ λ - α).
  bool cutMember(const GapRemovedElement& a) const;

private:
  bool alphaPositive_;
};

} // namespace hcouple

#endif
