#include "hcouple/scalar.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

namespace hcouple {

ScalarValue ScalarValue::quad(Rational a, Rational b, unsigned d) {
  if (d < 2)
    throw FormatError("radicand must be >= 2, got " + std::to_string(d));
  ScalarValue v;
  v.a_ = std::move(a);
  if (b != 0) {
    v.b_ = std::move(b);
    v.d_ = d;
  }
  return v;
}

const Rational& ScalarValue::asRational() const {
  if (!isRational())
    throw FormatError("scalar " + str() + " is not rational");
  return a_;
}

int ScalarValue::signum() const {
  const int sa = a_.sign();
  const int sb = b_.sign();
  if (sb == 0)
    return sa;
  if (sa == 0)
    return sb;
  if (sa == sb)
    return sa;
  // mixed signs: sign of a + b*sqrt(d) is decided by a^2 vs b^2*d
  const Rational lhs = a_ * a_;
  const Rational rhs = b_ * b_ * d_;
  if (lhs == rhs)
    throw InternalInvariantViolation("sqrt(" + std::to_string(d_) + ") compared rational");
  return lhs > rhs ? sa : sb;
}

unsigned ScalarValue::joinRadicand(const ScalarValue& x, const ScalarValue& y) {
  if (x.d_ == 0)
    return y.d_;
  if (y.d_ == 0 || y.d_ == x.d_)
    return x.d_;
  throw UnsupportedFieldPair("cannot mix sqrt" + std::to_string(x.d_) + " with sqrt" +
                             std::to_string(y.d_));
}

ScalarValue ScalarValue::operator-() const {
  ScalarValue v;
  v.a_ = -a_;
  v.b_ = -b_;
  v.d_ = d_;
  return v;
}

ScalarValue ScalarValue::operator+(const ScalarValue& o) const {
  const unsigned d = joinRadicand(*this, o);
  return d == 0 ? ScalarValue(Rational(a_ + o.a_)) : quad(a_ + o.a_, b_ + o.b_, d);
}

ScalarValue ScalarValue::operator-(const ScalarValue& o) const { return *this + (-o); }

ScalarValue ScalarValue::operator*(const ScalarValue& o) const {
  const unsigned d = joinRadicand(*this, o);
  if (d == 0)
    return ScalarValue(Rational(a_ * o.a_));
  // (a + b r)(c + e r) = ac + be d + (ae + bc) r,  r = sqrt(d)
  return quad(a_ * o.a_ + b_ * o.b_ * d, a_ * o.b_ + b_ * o.a_, d);
}

ScalarValue ScalarValue::operator/(const ScalarValue& o) const {
  if (o.isZero())
    throw FormatError("scalar division by zero");
  const unsigned d = joinRadicand(*this, o);
  if (d == 0)
    return ScalarValue(Rational(a_ / o.a_));
  // 1/(c + e r) = (c - e r)/(c^2 - e^2 d); denominator is nonzero since
  // sqrt(d) is irrational
  const Rational den = o.a_ * o.a_ - o.b_ * o.b_ * d;
  const ScalarValue conj = quad(o.a_ / den, -o.b_ / den, d);
  return *this * conj;
}

std::string ScalarValue::str() const {
  if (isRational())
    return a_.str();
  std::string radical = (b_ == 1 ? "" : b_ == -1 ? "-" : b_.str() + "*");
  radical += "sqrt" + std::to_string(d_);
  if (a_ == 0)
    return radical;
  if (b_.sign() > 0)
    return a_.str() + "+" + radical;
  return a_.str() + radical; // radical already carries its '-'
}

namespace {

// splits "a+b" / "a-b" at top level (no parens in scalar syntax); the
// sign belongs to the second part
bool splitAtSign(const std::string& s, std::string& head, std::string& tail) {
  for (std::size_t i = 1; i < s.size(); ++i) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != '/' && s[i - 1] != '*' && s[i - 1] != '+' &&
        s[i - 1] != '-') {
      head = s.substr(0, i);
      tail = (s[i] == '-' ? "-" : "") + s.substr(i + 1);
      return true;
    }
  }
  return false;
}

Rational parseRational(const std::string& s) {
  try {
    return Rational(s);
  } catch (const std::exception&) {
    throw FormatError("bad rational literal '" + s + "'");
  }
}

// "2/3*sqrt2", "sqrt2", "-sqrt5" -> (coefficient, radicand)
bool parseRadicalTerm(const std::string& s, Rational& coeff, unsigned& d) {
  const auto pos = s.find("sqrt");
  if (pos == std::string::npos)
    return false;
  const std::string dpart = s.substr(pos + 4);
  if (dpart.empty() || dpart.find_first_not_of("0123456789") != std::string::npos)
    throw FormatError("bad radicand in '" + s + "'");
  d = static_cast<unsigned>(std::stoul(dpart));
  std::string cpart = s.substr(0, pos);
  if (!cpart.empty() && cpart.back() == '*')
    cpart.pop_back();
  if (cpart.empty())
    coeff = 1;
  else if (cpart == "-")
    coeff = -1;
  else
    coeff = parseRational(cpart);
  return true;
}

} // namespace

ScalarValue ScalarValue::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)))
      s += c;
  if (s.empty())
    throw FormatError("empty scalar literal");

  std::string head, tail;
  if (splitAtSign(s, head, tail)) {
    return parse(head) + parse(tail);
  }
  Rational coeff;
  unsigned d = 0;
  if (parseRadicalTerm(s, coeff, d))
    return quad(0, coeff, d);
  return ScalarValue(parseRational(s));
}

std::ostream& operator<<(std::ostream& os, const ScalarValue& v) { return os << v.str(); }

const ScalarValue& ExtScalar::finite() const {
  if (isInf())
    throw FormatError("infinite scalar used where a finite value is required");
  return *v_;
}

ExtScalar ExtScalar::operator-() const { return isInf() ? *this : ExtScalar(-*v_); }

ExtScalar ExtScalar::operator+(const ExtScalar& o) const {
  if (isInf() || o.isInf())
    return infinity();
  return ExtScalar(*v_ + *o.v_);
}

ExtScalar ExtScalar::operator*(const ExtScalar& o) const {
  if (isInf() || o.isInf())
    return infinity();
  return ExtScalar(*v_ * *o.v_);
}

bool ExtScalar::less(const ExtScalar& o) const {
  if (isInf())
    return false;
  if (o.isInf())
    return true;
  return *v_ < *o.v_;
}

} // namespace hcouple
