#include "hcouple/transmono.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "hcouple/errors.hpp"

namespace hcouple {

TransMonomial TransMonomial::ell(unsigned k, ScalarValue exponent) {
  TransMonomial m;
  if (!exponent.isZero())
    m.logPart_[k] = std::move(exponent);
  return m;
}

const MultiSeries& TransMonomial::expArg() const {
  if (!expArg_)
    throw FormatError("monomial has no exp factor");
  return *expArg_;
}

unsigned TransMonomial::height() const {
  if (!expArg_)
    return 0;
  unsigned h = 0;
  for (const auto& [m, c] : expArg_->terms()) {
    (void)c;
    h = std::max(h, m.height());
  }
  return h + 1;
}

TransMonomial TransMonomial::exp(const MultiSeries& arg, unsigned heightBound) {
  TransMonomial out;
  MultiSeries rest;
  for (const auto& [m, c] : arg.terms()) {
    // exp(q·ℓ_{k+1}) = ℓ_k^q folds into the ℓ-exponents
    if (m.isPure() && m.logPart_.size() == 1 && m.logPart_.begin()->second.isOne() &&
        m.logPart_.begin()->first >= 1) {
      const unsigned k = m.logPart_.begin()->first - 1;
      auto it = out.logPart_.find(k);
      if (it == out.logPart_.end())
        out.logPart_[k] = c;
      else {
        it->second += c;
        if (it->second.isZero())
          out.logPart_.erase(it);
      }
      continue;
    }
    if (monoCompare(m, TransMonomial{}) != Ordering::GT)
      throw FormatError("exp argument must be purely large; offending monomial " + m.str());
    rest = rest.plus(MultiSeries::single(m, c));
  }
  if (!rest.isZero()) {
    out.expArg_ = std::make_shared<const MultiSeries>(std::move(rest));
    if (out.height() > heightBound)
      throw HeightExceeded("monomial height " + std::to_string(out.height()) +
                           " exceeds the bound " + std::to_string(heightBound));
  }
  return out;
}

TransMonomial TransMonomial::times(const TransMonomial& o) const {
  TransMonomial out;
  out.logPart_ = logPart_;
  for (const auto& [k, q] : o.logPart_) {
    auto it = out.logPart_.find(k);
    if (it == out.logPart_.end())
      out.logPart_[k] = q;
    else {
      it->second += q;
      if (it->second.isZero())
        out.logPart_.erase(it);
    }
  }
  MultiSeries arg;
  if (expArg_)
    arg = arg.plus(*expArg_);
  if (o.expArg_)
    arg = arg.plus(*o.expArg_);
  if (!arg.isZero())
    out.expArg_ = std::make_shared<const MultiSeries>(std::move(arg));
  return out;
}

TransMonomial TransMonomial::pow(const ScalarValue& q) const {
  TransMonomial out;
  if (q.isZero())
    return out;
  for (const auto& [k, e] : logPart_)
    out.logPart_[k] = e * q;
  if (expArg_)
    out.expArg_ = std::make_shared<const MultiSeries>(expArg_->scaled(q));
  return out;
}

bool TransMonomial::operator==(const TransMonomial& o) const {
  if (logPart_ != o.logPart_)
    return false;
  if ((expArg_ == nullptr) != (o.expArg_ == nullptr))
    return false;
  return expArg_ == nullptr || *expArg_ == *o.expArg_;
}

MultiSeries MultiSeries::single(TransMonomial m, ScalarValue c) {
  MultiSeries s;
  if (!c.isZero())
    s.terms_.emplace_back(std::move(m), std::move(c));
  return s;
}

const TransMonomial& MultiSeries::leadingMonomial() const {
  if (isZero())
    throw FormatError("zero multiseries has no leading monomial");
  return terms_.front().first;
}

const ScalarValue& MultiSeries::leadingCoeff() const {
  if (isZero())
    throw FormatError("zero multiseries has no leading coefficient");
  return terms_.front().second;
}

MultiSeries MultiSeries::plus(const MultiSeries& o) const {
  MultiSeries out;
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (i == terms_.size()) {
      out.terms_.push_back(o.terms_[j++]);
      continue;
    }
    if (j == o.terms_.size()) {
      out.terms_.push_back(terms_[i++]);
      continue;
    }
    switch (monoCompare(terms_[i].first, o.terms_[j].first)) {
    case Ordering::GT:
      out.terms_.push_back(terms_[i++]);
      break;
    case Ordering::LT:
      out.terms_.push_back(o.terms_[j++]);
      break;
    case Ordering::EQ: {
      ScalarValue c = terms_[i].second + o.terms_[j].second;
      if (!c.isZero())
        out.terms_.emplace_back(terms_[i].first, std::move(c));
      ++i;
      ++j;
      break;
    }
    }
  }
  return out;
}

MultiSeries MultiSeries::scaled(const ScalarValue& c) const {
  MultiSeries out;
  if (c.isZero())
    return out;
  out.terms_.reserve(terms_.size());
  for (const auto& [m, q] : terms_)
    out.terms_.emplace_back(m, q * c);
  return out;
}

MultiSeries MultiSeries::timesMonomial(const TransMonomial& m) const {
  // translation by m preserves the monomial order, so the list stays
  // sorted and no terms merge
  MultiSeries out;
  out.terms_.reserve(terms_.size());
  for (const auto& [mu, c] : terms_)
    out.terms_.emplace_back(mu.times(m), c);
  return out;
}

bool MultiSeries::operator==(const MultiSeries& o) const { return terms_ == o.terms_; }

std::string TransMonomial::str() const { return printMonomial(*this); }

std::string MultiSeries::str() const { return printSeries(*this); }

Ordering monoCompare(const TransMonomial& a, const TransMonomial& b) {
  if (a == b)
    return Ordering::EQ;
  if (a.isPure() && b.isPure()) {
    // lexicographic on exponents by increasing depth: ℓ_k dominates
    // every power of ℓ_{k+1}
    auto ia = a.logPart().begin(), ea = a.logPart().end();
    auto ib = b.logPart().begin(), eb = b.logPart().end();
    while (ia != ea || ib != eb) {
      unsigned ka = ia == ea ? ~0u : ia->first;
      unsigned kb = ib == eb ? ~0u : ib->first;
      if (ka < kb) {
        const int s = ia->second.signum();
        return s > 0 ? Ordering::GT : Ordering::LT;
      }
      if (kb < ka) {
        const int s = ib->second.signum();
        return s > 0 ? Ordering::LT : Ordering::GT;
      }
      if (ia->second != ib->second) {
        return ia->second > ib->second ? Ordering::GT : Ordering::LT;
      }
      ++ia;
      ++ib;
    }
    return Ordering::EQ;
  }
  const MultiSeries d = logMS(a).minus(logMS(b));
  if (d.isZero())
    return Ordering::EQ;
  return d.leadingCoeff().signum() > 0 ? Ordering::GT : Ordering::LT;
}

MultiSeries logMS(const TransMonomial& m) {
  MultiSeries out;
  if (m.hasExpArg())
    out = m.expArg();
  for (const auto& [k, q] : m.logPart())
    out = out.plus(MultiSeries::single(TransMonomial::ell(k + 1), q));
  return out;
}

namespace {

TransMonomial ellDagger(unsigned k) {
  // ℓ_k† = (ℓ_0 ℓ_1 ··· ℓ_k)^{-1}
  TransMonomial m;
  for (unsigned j = 0; j <= k; ++j)
    m = m.times(TransMonomial::ell(j, ScalarValue(-1)));
  return m;
}

} // namespace

MultiSeries daggerM(const TransMonomial& m) {
  MultiSeries out;
  for (const auto& [k, q] : m.logPart())
    out = out.plus(MultiSeries::single(ellDagger(k), q));
  if (m.hasExpArg()) {
    // (exp L)† = L' = Σ c · (μ† · μ)
    for (const auto& [mu, c] : m.expArg().terms())
      out = out.plus(daggerM(mu).timesMonomial(mu).scaled(c));
  }
  return out;
}

TransMonomial psiMonomial(const TransMonomial& m) {
  const MultiSeries d = daggerM(m);
  if (d.isZero())
    throw ZeroDagger("logarithmic derivative of " + m.str() + " vanished");
  return d.leadingMonomial();
}

TransMonomial classKey(const TransMonomial& m) {
  const MultiSeries lg = logMS(m);
  if (lg.isZero())
    throw FormatError("the monomial 1 has no class key");
  return lg.leadingMonomial();
}

Ordering archClassCompareM(const TransMonomial& a, const TransMonomial& b) {
  const bool za = a.isOne(), zb = b.isOne();
  if (za && zb)
    return Ordering::EQ;
  if (za)
    return Ordering::LT;
  if (zb)
    return Ordering::GT;
  // n·|log a| < |log b| for all n iff the leading monomial of log a is
  // dominated by that of log b
  return monoCompare(classKey(a), classKey(b));
}

int transSignum(const TransValue& a) {
  if (a.isZero())
    return 0;
  return monoCompare(a.mono, TransMonomial{}) == Ordering::LT ? 1 : -1;
}

Ordering transCompare(const TransValue& a, const TransValue& b) {
  return orderingOfInt(transSignum(a - b));
}

std::optional<TransValue> psiT(const TransValue& a) {
  if (a.isZero())
    return std::nullopt;
  return TransValue::of(psiMonomial(a.mono));
}

int transClassCompare(const TransValue& a, const TransValue& b) {
  return static_cast<int>(archClassCompareM(a.mono, b.mono));
}

std::optional<ScalarValue> transColon(const TransValue& a, const TransValue& b) {
  if (b.isZero())
    return std::nullopt;
  if (a.isZero())
    return ScalarValue(0);
  const int cc = transClassCompare(a, b);
  if (cc > 0)
    return std::nullopt;
  if (cc < 0)
    return ScalarValue(0);
  // equal class: the leading coefficients of the logs cancel at
  // c = lc(log a)/lc(log b), leaving a strictly smaller class
  return logMS(a.mono).leadingCoeff() / logMS(b.mono).leadingCoeff();
}

TransValue integrateT(const TransValue& gamma) {
  const auto accepts = [&](const TransValue& alpha) {
    if (alpha.isZero())
      return false;
    return alpha + *psiT(alpha) == gamma;
  };

  // ψ-correction fixpoint: catches integrands in the exponential zone
  TransValue cand = gamma.isZero() ? TransValue::unit() : gamma;
  for (int iter = 0; iter < 64; ++iter) {
    if (accepts(cand))
      return cand;
    if (cand.isZero())
      break;
    cand = gamma - *psiT(cand);
  }
  // σ-ladder: candidates γ - σ_k with σ_k = v((ℓ_0···ℓ_k)^{-1}) cover
  // the iterated-log zone
  for (unsigned k = 0; k < 64; ++k) {
    const TransValue sigma = TransValue::of(ellDagger(k));
    const TransValue alpha = gamma - sigma;
    if (accepts(alpha))
      return alpha;
  }
  throw IntegrationGap("integration cap reached for " + gamma.str());
}

bool cutMemberT(const TransValue& a) { return transSignum(integrateT(a)) < 0; }

// ----- concrete syntax -----

namespace {

struct MonoParser {
  const std::string& text;
  std::size_t pos = 0;
  unsigned heightBound;

  explicit MonoParser(const std::string& t, unsigned hb) : text(t), heightBound(hb) {}

  [[noreturn]] void fail(const std::string& expected) const {
    throw SyntaxError(1, static_cast<int>(pos) + 1, expected);
  }

  void skipWs() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  bool eat(char c) {
    skipWs();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skipWs();
    return pos < text.size() ? text[pos] : '\0';
  }

  Rational parseInt() {
    skipWs();
    std::size_t start = pos;
    if (pos < text.size() && text[pos] == '-')
      ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos == start || (text[start] == '-' && pos == start + 1))
      fail("an integer");
    return Rational(text.substr(start, pos - start));
  }

  ScalarValue parseRational() {
    Rational num = parseInt();
    if (eat('/')) {
      const Rational den = parseInt();
      if (den == 0)
        fail("a nonzero denominator");
      return ScalarValue(Rational(num / den));
    }
    return ScalarValue(num);
  }

  ScalarValue parseExponent() {
    if (eat('(')) {
      ScalarValue q = parseRational();
      if (!eat(')'))
        fail("')'");
      return q;
    }
    return parseRational();
  }

  TransMonomial parseFactor() {
    skipWs();
    if (pos < text.size() && text[pos] == '1' &&
        (pos + 1 == text.size() || !std::isdigit(static_cast<unsigned char>(text[pos + 1])))) {
      ++pos;
      return TransMonomial{};
    }
    unsigned index = 0;
    bool isExp = false;
    if (text.compare(pos, 3, "exp") == 0) {
      pos += 3;
      isExp = true;
    } else if (pos < text.size() && text[pos] == 'x') {
      ++pos;
    } else if (pos < text.size() && text[pos] == 'l') {
      ++pos;
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        ++pos;
      if (pos == start)
        fail("a log depth after 'l'");
      index = static_cast<unsigned>(std::stoul(text.substr(start, pos - start)));
    } else {
      fail("'x', 'l<k>', 'exp(', or '1'");
    }

    TransMonomial base;
    if (isExp) {
      if (!eat('('))
        fail("'(' after exp");
      const MultiSeries arg = parseSeries();
      if (!eat(')'))
        fail("')'");
      base = TransMonomial::exp(arg, heightBound);
    } else {
      base = TransMonomial::ell(index);
    }
    if (eat('^'))
      return base.pow(parseExponent());
    return base;
  }

  TransMonomial parseProduct() {
    TransMonomial m = parseFactor();
    while (eat('*'))
      m = m.times(parseFactor());
    return m;
  }

  // a rational-linear combination of monomials: "2*exp(x) - x + 1/2*l1"
  MultiSeries parseSeries() {
    MultiSeries out;
    bool negative = eat('-');
    for (;;) {
      ScalarValue coeff(negative ? -1 : 1);
      skipWs();
      const bool startsNumeric =
          pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])));
      if (startsNumeric) {
        const ScalarValue q = parseRational();
        coeff = coeff * q;
        if (!eat('*')) {
          // a bare rational term: coefficient of the monomial 1
          out = out.plus(MultiSeries::single(TransMonomial{}, coeff));
          if (eat('+'))
            negative = false;
          else if (eat('-'))
            negative = true;
          else
            break;
          continue;
        }
      }
      const TransMonomial m = parseProduct();
      out = out.plus(MultiSeries::single(m, coeff));
      if (eat('+'))
        negative = false;
      else if (eat('-'))
        negative = true;
      else
        break;
    }
    return out;
  }
};

std::string printExponent(const ScalarValue& q) {
  const Rational& r = q.asRational();
  if (boost::multiprecision::denominator(r) == 1 && r > 0)
    return r.str();
  return "(" + r.str() + ")";
}

} // namespace

TransMonomial parseMonomial(const std::string& text, unsigned heightBound) {
  MonoParser p(text, heightBound);
  const TransMonomial m = p.parseProduct();
  p.skipWs();
  if (p.pos != text.size())
    p.fail("end of input");
  return m;
}

std::string printMonomial(const TransMonomial& m) {
  if (m.isOne())
    return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, q] : m.logPart()) {
    if (!first)
      os << " * ";
    first = false;
    os << (k == 0 ? "x" : "l" + std::to_string(k));
    if (!q.isOne())
      os << "^" << printExponent(q);
  }
  if (m.hasExpArg()) {
    if (!first)
      os << " * ";
    os << "exp(" << printSeries(m.expArg()) << ")";
  }
  return os.str();
}

std::string printSeries(const MultiSeries& s) {
  if (s.isZero())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : s.terms()) {
    const int sign = c.signum();
    const ScalarValue mag = sign < 0 ? -c : c;
    if (first) {
      if (sign < 0)
        os << "-";
      first = false;
    } else {
      os << (sign < 0 ? " - " : " + ");
    }
    if (m.isOne())
      os << mag.str();
    else if (mag.isOne())
      os << printMonomial(m);
    else
      os << mag.str() << "*" << printMonomial(m);
  }
  return os.str();
}

} // namespace hcouple
