#ifndef HCOUPLE_VEC_HPP
#define HCOUPLE_VEC_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hcouple/ordering.hpp"
#include "hcouple/scalar.hpp"

namespace hcouple {

using BasisId = std::string;

/// Declares the ordered basis of a finitely generated Hahn space in
/// normal form: each basis vector spans its own archimedean class, and
/// the declaration order is the class order (first = largest class).
/// Basis vectors are positive by convention, so the sign of an element
/// is the sign of its leading coefficient.
class BasisContext {
public:
  BasisContext() = default;
  explicit BasisContext(std::vector<BasisId> idsLargestFirst);

  std::size_t size() const { return order_.size(); }
  bool contains(const BasisId& id) const { return rank_.count(id) != 0; }

  /// 0 = largest class. Throws UnknownBasisId.
  std::size_t rank(const BasisId& id) const;

  const std::vector<BasisId>& order() const { return order_; }
  const BasisId& at(std::size_t rank) const { return order_.at(rank); }

  /// New context with `id` inserted at class position `rank`
  /// (0 = above all, size() = below all).
  BasisContext withInserted(const BasisId& id, std::size_t rank) const;

  /// Smallest unused id of the form "b<k>".
  BasisId freshId() const;

  bool operator==(const BasisContext& o) const { return order_ == o.order_; }

private:
  std::vector<BasisId> order_;
  std::map<BasisId, std::size_t> rank_;
};

/// A finite scalar-linear combination over named basis vectors. Zero
/// coefficients are never stored; the empty support is the zero element.
/// Well-formedness (and any order decision) is relative to a BasisContext.
class VecElement {
public:
  VecElement() = default;

  static VecElement unitVector(const BasisId& id) { return VecElement().withCoeff(id, 1); }

  bool isZero() const { return coeff_.empty(); }
  const std::map<BasisId, ScalarValue>& support() const { return coeff_; }
  std::size_t supportSize() const { return coeff_.size(); }

  ScalarValue coeff(const BasisId& id) const;
  VecElement withCoeff(const BasisId& id, ScalarValue c) const;

  VecElement operator+(const VecElement& o) const;
  VecElement operator-(const VecElement& o) const;
  VecElement operator-() const;
  VecElement scaled(const ScalarValue& c) const;

  bool operator==(const VecElement& o) const { return coeff_ == o.coeff_; }
  bool operator!=(const VecElement& o) const { return !(*this == o); }
  /// Structural order, used only for map keys / canonical serialization.
  bool operator<(const VecElement& o) const;

  /// All support ids declared in ctx? (throws nothing)
  bool wellFormed(const BasisContext& ctx) const;

  /// Leading basis id (smallest rank = largest class). Throws on zero
  /// or on ids outside ctx.
  const BasisId& leadingId(const BasisContext& ctx) const;
  const ScalarValue& leadingCoeff(const BasisContext& ctx) const;

  /// Exact sign of the element under the Hahn-normal-form order.
  int signum(const BasisContext& ctx) const;

  std::string str() const;

private:
  std::map<BasisId, ScalarValue> coeff_;
};

/// The archimedean class of an element: Zero, or the class of its leading
/// basis vector.
class ArchClass {
public:
  static ArchClass zero() { return ArchClass(); }
  static ArchClass of(BasisId id) {
    ArchClass c;
    c.id_ = std::move(id);
    return c;
  }

  bool isZero() const { return !id_.has_value(); }
  const BasisId& id() const { return *id_; }

  bool operator==(const ArchClass& o) const { return id_ == o.id_; }
  bool operator!=(const ArchClass& o) const { return !(*this == o); }

  std::string str() const { return isZero() ? "[0]" : "[" + *id_ + "]"; }

private:
  std::optional<BasisId> id_;
};

/// Total order on Γ: sign of the leading coefficient of a - b.
Ordering vecCompare(const VecElement& a, const VecElement& b, const BasisContext& ctx);

/// [a]: Zero iff a = 0, otherwise the class of the leading basis vector.
ArchClass archClass(const VecElement& a, const BasisContext& ctx);

/// Class order; Zero is strictly smallest, otherwise mirrors the basis
/// declaration order.
Ordering classCompare(const ArchClass& a, const ArchClass& b, const BasisContext& ctx);

/// A vector with the adjoined default point; Infinity absorbs group
/// operations.
class ExtVec {
public:
  ExtVec() : v_(VecElement{}) {}
  ExtVec(VecElement v) : v_(std::move(v)) {} // NOLINT: implicit by design
  static ExtVec infinity() { return ExtVec(Inf{}); }

  bool isInf() const { return !v_.has_value(); }
  const VecElement& finite() const;

  ExtVec operator+(const ExtVec& o) const;
  ExtVec operator-() const;
  ExtVec scaled(const ExtScalar& c) const; // sc with the default rule

  bool operator==(const ExtVec& o) const { return v_ == o.v_; }
  bool operator!=(const ExtVec& o) const { return !(*this == o); }

  std::string str() const { return isInf() ? "inf" : v_->str(); }

private:
  struct Inf {};
  explicit ExtVec(Inf) {}
  std::optional<VecElement> v_;
};

/// The ':' operator. For finite a, b with b != 0 and [a] <= [b], the
/// unique scalar c with [a - c b] < [b]; all other pairs map to infinity.
ExtScalar colonDiv(const ExtVec& a, const ExtVec& b, const BasisContext& ctx);

} // namespace hcouple

#endif
