#include "hcouple/vec.hpp"

#include <algorithm>
#include <sstream>

namespace hcouple {

BasisContext::BasisContext(std::vector<BasisId> idsLargestFirst) : order_(std::move(idsLargestFirst)) {
  for (std::size_t i = 0; i < order_.size(); ++i) {
    if (!rank_.emplace(order_[i], i).second)
      throw FormatError("duplicate basis id '" + order_[i] + "'");
  }
}

std::size_t BasisContext::rank(const BasisId& id) const {
  auto it = rank_.find(id);
  if (it == rank_.end())
    throw UnknownBasisId(id);
  return it->second;
}

BasisContext BasisContext::withInserted(const BasisId& id, std::size_t rank) const {
  if (rank > order_.size())
    throw FormatError("insert position out of range");
  std::vector<BasisId> ids = order_;
  ids.insert(ids.begin() + static_cast<std::ptrdiff_t>(rank), id);
  return BasisContext(std::move(ids));
}

BasisId BasisContext::freshId() const {
  for (std::size_t k = 1;; ++k) {
    BasisId id = "b" + std::to_string(k);
    if (!contains(id))
      return id;
  }
}

ScalarValue VecElement::coeff(const BasisId& id) const {
  auto it = coeff_.find(id);
  return it == coeff_.end() ? ScalarValue() : it->second;
}

VecElement VecElement::withCoeff(const BasisId& id, ScalarValue c) const {
  VecElement out = *this;
  if (c.isZero())
    out.coeff_.erase(id);
  else
    out.coeff_[id] = std::move(c);
  return out;
}

VecElement VecElement::operator+(const VecElement& o) const {
  VecElement out = *this;
  for (const auto& [id, c] : o.coeff_) {
    auto it = out.coeff_.find(id);
    if (it == out.coeff_.end()) {
      out.coeff_.emplace(id, c);
    } else {
      it->second += c;
      if (it->second.isZero())
        out.coeff_.erase(it);
    }
  }
  return out;
}

VecElement VecElement::operator-() const {
  VecElement out;
  for (const auto& [id, c] : coeff_)
    out.coeff_.emplace(id, -c);
  return out;
}

VecElement VecElement::operator-(const VecElement& o) const { return *this + (-o); }

VecElement VecElement::scaled(const ScalarValue& c) const {
  VecElement out;
  if (c.isZero())
    return out;
  for (const auto& [id, q] : coeff_)
    out.coeff_.emplace(id, q * c);
  return out;
}

bool VecElement::operator<(const VecElement& o) const {
  auto asStr = [](const VecElement& v) {
    std::string s;
    for (const auto& [id, c] : v.coeff_)
      s += id + "=" + c.str() + ";";
    return s;
  };
  return asStr(*this) < asStr(o);
}

bool VecElement::wellFormed(const BasisContext& ctx) const {
  return std::all_of(coeff_.begin(), coeff_.end(),
                     [&](const auto& kv) { return ctx.contains(kv.first); });
}

const BasisId& VecElement::leadingId(const BasisContext& ctx) const {
  if (isZero())
    throw FormatError("zero element has no leading term");
  const BasisId* best = nullptr;
  std::size_t bestRank = 0;
  for (const auto& [id, c] : coeff_) {
    const std::size_t r = ctx.rank(id);
    if (best == nullptr || r < bestRank) {
      best = &id;
      bestRank = r;
    }
  }
  return *best;
}

const ScalarValue& VecElement::leadingCoeff(const BasisContext& ctx) const {
  return coeff_.at(leadingId(ctx));
}

int VecElement::signum(const BasisContext& ctx) const {
  if (isZero())
    return 0;
  return leadingCoeff(ctx).signum();
}

std::string VecElement::str() const {
  if (isZero())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [id, c] : coeff_) {
    if (!first)
      os << " + ";
    first = false;
    if (c.isOne())
      os << id;
    else
      os << c.str() << "*" << id;
  }
  return os.str();
}

Ordering vecCompare(const VecElement& a, const VecElement& b, const BasisContext& ctx) {
  if (!a.wellFormed(ctx))
    a.leadingId(ctx); // throws UnknownBasisId with the offending id
  if (!b.wellFormed(ctx))
    b.leadingId(ctx);
  return orderingOfInt((a - b).signum(ctx));
}

ArchClass archClass(const VecElement& a, const BasisContext& ctx) {
  if (a.isZero())
    return ArchClass::zero();
  return ArchClass::of(a.leadingId(ctx));
}

Ordering classCompare(const ArchClass& a, const ArchClass& b, const BasisContext& ctx) {
  if (a.isZero() && b.isZero())
    return Ordering::EQ;
  if (a.isZero())
    return Ordering::LT;
  if (b.isZero())
    return Ordering::GT;
  const std::size_t ra = ctx.rank(a.id()), rb = ctx.rank(b.id());
  // smaller rank = larger class
  return ra == rb ? Ordering::EQ : (ra > rb ? Ordering::LT : Ordering::GT);
}

const VecElement& ExtVec::finite() const {
  if (isInf())
    throw FormatError("infinite vector used where a finite value is required");
  return *v_;
}

ExtVec ExtVec::operator+(const ExtVec& o) const {
  if (isInf() || o.isInf())
    return infinity();
  return ExtVec(*v_ + *o.v_);
}

ExtVec ExtVec::operator-() const { return isInf() ? *this : ExtVec(-*v_); }

ExtVec ExtVec::scaled(const ExtScalar& c) const {
  if (isInf() || c.isInf())
    return infinity();
  return ExtVec(v_->scaled(c.finite()));
}

ExtScalar colonDiv(const ExtVec& a, const ExtVec& b, const BasisContext& ctx) {
  if (a.isInf() || b.isInf() || b.finite().isZero())
    return ExtScalar::infinity();
  const VecElement& x = a.finite();
  const VecElement& y = b.finite();
  if (x.isZero())
    return ExtScalar(ScalarValue(0));
  const BasisId& ly = y.leadingId(ctx);
  const BasisId& lx = x.leadingId(ctx);
  if (ctx.rank(lx) < ctx.rank(ly)) // [x] > [y]
    return ExtScalar::infinity();
  if (ctx.rank(lx) > ctx.rank(ly)) // [x] < [y]: c = 0 works
    return ExtScalar(ScalarValue(0));
  return ExtScalar(x.coeff(ly) / y.coeff(ly));
}

} // namespace hcouple
