#ifndef HCOUPLE_SCALAR_HPP
#define HCOUPLE_SCALAR_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <iosfwd>
#include <optional>
#include <string>

#include "hcouple/errors.hpp"

namespace hcouple {

using Rational = boost::multiprecision::cpp_rational;

/// An exact element of the scalar field: either a rational, or a + b*sqrt(d)
/// in a fixed real quadratic extension Q(sqrt d) with d a square-free
/// integer >= 2. Values are canonical: b == 0 collapses to the rational
/// form (radicand 0), so equality of values is structural equality.
///
/// All ordering decisions are made by exact sign analysis; no floating
/// point is involved anywhere.
class ScalarValue {
public:
  ScalarValue() = default;
  ScalarValue(long n) : a_(n) {} // NOLINT: implicit by design, mirrors int literals
  explicit ScalarValue(Rational r) : a_(std::move(r)) {}

  /// a + b*sqrt(d). Collapses to rational form when b == 0.
  static ScalarValue quad(Rational a, Rational b, unsigned d);

  /// Parses "3/4", "-2", "1/2+2/3*sqrt2", "sqrt2", "-sqrt3", "3-sqrt2", ...
  static ScalarValue parse(const std::string& text);

  bool isRational() const { return d_ == 0; }
  unsigned radicand() const { return d_; }
  const Rational& rationalPart() const { return a_; }
  const Rational& radicalPart() const { return b_; }

  /// The rational value; throws FormatError when irrational.
  const Rational& asRational() const;

  bool isZero() const { return a_ == 0 && b_ == 0; }
  bool isOne() const { return d_ == 0 && a_ == 1; }

  /// Exact sign in {-1, 0, +1}.
  int signum() const;

  ScalarValue operator-() const;
  ScalarValue operator+(const ScalarValue& o) const;
  ScalarValue operator-(const ScalarValue& o) const;
  ScalarValue operator*(const ScalarValue& o) const;
  ScalarValue operator/(const ScalarValue& o) const;

  ScalarValue& operator+=(const ScalarValue& o) { return *this = *this + o; }
  ScalarValue& operator-=(const ScalarValue& o) { return *this = *this - o; }
  ScalarValue& operator*=(const ScalarValue& o) { return *this = *this * o; }

  ScalarValue abs() const { return signum() < 0 ? -*this : *this; }

  bool operator==(const ScalarValue& o) const { return a_ == o.a_ && b_ == o.b_ && d_ == o.d_; }
  bool operator!=(const ScalarValue& o) const { return !(*this == o); }
  bool operator<(const ScalarValue& o) const { return (*this - o).signum() < 0; }
  bool operator<=(const ScalarValue& o) const { return (*this - o).signum() <= 0; }
  bool operator>(const ScalarValue& o) const { return o < *this; }
  bool operator>=(const ScalarValue& o) const { return o <= *this; }

  /// Exact serialization, e.g. "3/4" or "1/2+2/3*sqrt2".
  std::string str() const;

private:
  // checks the radicands of two operands are compatible; returns the
  // common radicand (0 when both rational)
  static unsigned joinRadicand(const ScalarValue& x, const ScalarValue& y);

  Rational a_;      // rational part
  Rational b_;      // coefficient of sqrt(d); zero iff d_ == 0
  unsigned d_ = 0;  // 0 = rational, else the square-free radicand
};

std::ostream& operator<<(std::ostream& os, const ScalarValue& v);

/// A scalar with the adjoined default point. Infinity absorbs all
/// arithmetic, matching the semantics of the scalar sort with default
/// values.
class ExtScalar {
public:
  ExtScalar() : v_(ScalarValue{}) {}
  ExtScalar(ScalarValue v) : v_(std::move(v)) {} // NOLINT: implicit by design
  static ExtScalar infinity() { return ExtScalar(Inf{}); }

  bool isInf() const { return !v_.has_value(); }
  const ScalarValue& finite() const; // throws FormatError when infinite

  ExtScalar operator-() const;
  ExtScalar operator+(const ExtScalar& o) const;
  ExtScalar operator*(const ExtScalar& o) const;

  bool operator==(const ExtScalar& o) const { return v_ == o.v_; }
  bool operator!=(const ExtScalar& o) const { return !(*this == o); }

  /// Order with c < inf for every finite c, inf not less than inf.
  bool less(const ExtScalar& o) const;

  std::string str() const { return isInf() ? "inf" : v_->str(); }

private:
  struct Inf {};
  explicit ExtScalar(Inf) {}
  std::optional<ScalarValue> v_;
};

} // namespace hcouple

#endif
