#ifndef HCOUPLE_TRANSMONO_HPP
#define HCOUPLE_TRANSMONO_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hcouple/ordering.hpp"
#include "hcouple/scalar.hpp"

namespace hcouple {

class MultiSeries;

/// Height cap for exponential towers. The examples this library
/// reproduces live at height 2–3; unbounded towers buy nothing here.
inline constexpr unsigned kDefaultHeightBound = 3;

/// A canonical bounded-height log-exp monomial: a product
///   x^{q_0} · ℓ_1^{q_1} ··· ℓ_r^{q_r} · exp(L)
/// where ℓ_0 = x, ℓ_{k+1} = log ℓ_k, and L is a purely large exact
/// multiseries of strictly lower height. Canonical form merges
/// exponents, stores no exp(0) factor, and folds single-ℓ terms of L
/// into the ℓ-exponents (exp(q·ℓ_{k+1}) = ℓ_k^q), so equal monomials are
/// structurally equal.
class TransMonomial {
public:
  TransMonomial() = default; // the monomial 1

  static TransMonomial ell(unsigned k, ScalarValue exponent = ScalarValue(1));
  static TransMonomial x(ScalarValue exponent = ScalarValue(1)) { return ell(0, std::move(exponent)); }

  /// exp(arg). Folds foldable terms, checks the rest is purely large
  /// (every monomial of L must dominate 1) and within the height bound.
  /// Throws HeightExceeded / FormatError.
  static TransMonomial exp(const MultiSeries& arg, unsigned heightBound = kDefaultHeightBound);

  bool isOne() const { return logPart_.empty() && expArg_ == nullptr; }
  bool isPure() const { return expArg_ == nullptr; }

  const std::map<unsigned, ScalarValue>& logPart() const { return logPart_; }
  bool hasExpArg() const { return expArg_ != nullptr; }
  const MultiSeries& expArg() const; // only when hasExpArg()

  unsigned height() const;

  TransMonomial times(const TransMonomial& o) const;
  TransMonomial pow(const ScalarValue& q) const;
  TransMonomial inverse() const { return pow(ScalarValue(-1)); }

  bool operator==(const TransMonomial& o) const;
  bool operator!=(const TransMonomial& o) const { return !(*this == o); }

  std::string str() const;

private:
  friend class MultiSeries;
  std::map<unsigned, ScalarValue> logPart_;      // exponent of ℓ_k; no zeros
  std::shared_ptr<const MultiSeries> expArg_;    // nonempty when present
};

/// A finite exact sum Σ c_i · m_i of monomials with nonzero rational
/// coefficients, kept sorted with the asymptotically largest monomial
/// first. Carrier for logarithms and logarithmic derivatives.
class MultiSeries {
public:
  MultiSeries() = default;
  static MultiSeries single(TransMonomial m, ScalarValue c);

  bool isZero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<std::pair<TransMonomial, ScalarValue>>& terms() const { return terms_; }

  const TransMonomial& leadingMonomial() const;
  const ScalarValue& leadingCoeff() const;

  MultiSeries plus(const MultiSeries& o) const;
  MultiSeries minus(const MultiSeries& o) const { return plus(o.scaled(ScalarValue(-1))); }
  MultiSeries scaled(const ScalarValue& c) const;
  MultiSeries timesMonomial(const TransMonomial& m) const;

  bool operator==(const MultiSeries& o) const;
  bool operator!=(const MultiSeries& o) const { return !(*this == o); }

  std::string str() const;

private:
  // invariant: strictly descending by monoCompare, no zero coefficients
  std::vector<std::pair<TransMonomial, ScalarValue>> terms_;
};

/// Total asymptotic comparison of canonical monomials: a ≻ b iff a
/// dominates b. Decided by lexicographic exponents for pure-ℓ monomials
/// and by the sign of the leading term of log a - log b otherwise (the
/// recursion descends tower height, so it terminates).
Ordering monoCompare(const TransMonomial& a, const TransMonomial& b);

/// log m as an exact multiseries: Σ q_k ℓ_{k+1} + L.
MultiSeries logMS(const TransMonomial& m);

/// The exact logarithmic derivative m† = m'/m:
///   (ℓ_k^q)† = q·(ℓ_0···ℓ_k)^{-1},   (exp L)† = L' = Σ c·(μ†·μ).
/// Cancellation is resolved by full exact combination before anything
/// looks at leading terms.
MultiSeries daggerM(const TransMonomial& m);

/// The monomial of ψ(v m): the leading monomial of m† after exact
/// cancellation. Throws ZeroDagger when m† = 0 (only the constant 1).
TransMonomial psiMonomial(const TransMonomial& m);

/// Class key: the leading monomial of log m. Two values have the same
/// archimedean class iff their keys are equal, and [v a] < [v b] iff
/// key(a) ≺ key(b).
TransMonomial classKey(const TransMonomial& m);

/// [v a] vs [v b]; zero (m = 1) is the smallest class.
Ordering archClassCompareM(const TransMonomial& a, const TransMonomial& b);

/// ----- the couple of monomial values -----
/// v is an order-reversing isomorphism from the multiplicative monomial
/// group onto an additive H-couple over Q: v(a·b) = v(a)+v(b),
/// q·v(m) = v(m^q), v(m) > 0 iff m ≺ 1, and ψ(v m) = v(ψ-monomial of m).
struct TransValue {
  TransMonomial mono;

  static TransValue zero() { return {TransMonomial{}}; }
  static TransValue of(TransMonomial m) { return {std::move(m)}; }
  /// 1 = v(x^{-1}), the normalization fixed point.
  static TransValue unit() { return of(TransMonomial::x(ScalarValue(-1))); }

  bool isZero() const { return mono.isOne(); }
  TransValue operator+(const TransValue& o) const { return of(mono.times(o.mono)); }
  TransValue operator-() const { return of(mono.inverse()); }
  TransValue operator-(const TransValue& o) const { return *this + (-o); }
  TransValue scaled(const ScalarValue& q) const { return of(mono.pow(q)); }
  bool operator==(const TransValue& o) const { return mono == o.mono; }
  bool operator!=(const TransValue& o) const { return !(*this == o); }

  std::string str() const { return "v(" + mono.str() + ")"; }
};

int transSignum(const TransValue& a);
Ordering transCompare(const TransValue& a, const TransValue& b);
std::optional<TransValue> psiT(const TransValue& a); // nullopt = ∞
int transClassCompare(const TransValue& a, const TransValue& b);
std::optional<ScalarValue> transColon(const TransValue& a, const TransValue& b);

/// Asymptotic integration on monomial values: the unique α with
/// α + ψ(α) = γ, found by the ψ-correction fixpoint plus the σ-ladder
/// of iterated-log classes. The exact postcondition is checked; the cap
/// surfacing as IntegrationGap is never expected on this couple.
TransValue integrateT(const TransValue& gamma);

bool cutMemberT(const TransValue& a);

/// ----- concrete syntax -----
/// `x^(3/2) * l1^(-1) * exp(2*exp(x) - x)`; parse/print are mutually
/// inverse on canonical forms.
TransMonomial parseMonomial(const std::string& text, unsigned heightBound = kDefaultHeightBound);
std::string printMonomial(const TransMonomial& m);
std::string printSeries(const MultiSeries& s);

} // namespace hcouple

#endif
