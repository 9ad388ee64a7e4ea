#ifndef HCOUPLE_MODEL_HPP
#define HCOUPLE_MODEL_HPP

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "hcouple/closure.hpp"
#include "hcouple/logmodel.hpp"
#include "hcouple/presentation.hpp"
#include "hcouple/transmono.hpp"

namespace hcouple {

/// Type-erased element of whichever couple a model handle exposes.
using MValue = std::variant<VecElement, LogElement, GapLogElement, TransValue>;

std::string mvalueStr(const MValue& v);

using Rng = std::mt19937_64;

/// Uniform read interface over the concrete couples: finitely presented
/// stages, the log-monomial couple, its gap extension, and the
/// transmonomial couple. Everything is exact; ψ and colon return nullopt
/// for the default value ∞.
///
/// Handles are immutable snapshots except for engine-backed
/// presentation models, whose integrate() may grow the underlying
/// stage.
class CoupleModel {
public:
  virtual ~CoupleModel() = default;

  virtual std::string name() const = 0;

  virtual MValue zero() const = 0;
  virtual std::optional<MValue> constant(const std::string& name) const = 0;

  virtual MValue add(const MValue& a, const MValue& b) const = 0;
  virtual MValue negate(const MValue& a) const = 0;
  virtual MValue scalarMul(const ScalarValue& c, const MValue& a) const = 0;

  virtual int signum(const MValue& a) const = 0;
  Ordering compare(const MValue& a, const MValue& b) const {
    return orderingOfInt(signum(add(a, negate(b))));
  }
  bool isZero(const MValue& a) const { return signum(a) == 0; }

  virtual std::optional<MValue> psi(const MValue& a) const = 0;
  std::optional<MValue> derive(const MValue& a) const {
    const auto p = psi(a);
    if (!p)
      return std::nullopt;
    return add(a, *p);
  }

  virtual bool cutMember(const MValue& a) const = 0;

  /// [|a|] vs [|b|] in {-1, 0, +1}.
  virtual int classCompare(const MValue& a, const MValue& b) const = 0;

  /// The ':' map — nullopt encodes ∞.
  virtual std::optional<ScalarValue> colon(const MValue& a, const MValue& b) const = 0;

  virtual Trichotomy classify() const = 0;
  bool hasAsymptoticIntegration() const {
    return classify().kind == TrichotomyKind::AsymptoticIntegration;
  }

  /// The α with α' = γ where the model supports it (nullopt otherwise —
  /// not an error, just absence of the capability).
  virtual std::optional<MValue> integrate(const MValue& /*gamma*/) const {
    return std::nullopt;
  }

  /// A positive element of class strictly below [a] (and below any class
  /// produced so far), when the model has one.
  virtual std::optional<MValue> elementBelowClass(const MValue& /*a*/) const {
    return std::nullopt;
  }

  /// Exact structural answer to "does every nonzero element of
  /// a + <base group> keep an archimedean class of the base?", where the
  /// base group is the model's designated dense subgroup. Only the gap
  /// extension certifies this.
  virtual std::optional<bool> cosetClassesInBase(const MValue& /*a*/) const {
    return std::nullopt;
  }

  virtual MValue sampleElement(Rng& rng) const = 0;

  virtual std::string print(const MValue& a) const { return mvalueStr(a); }
  virtual MValue parseValue(const std::string& text) const = 0;

  /// Candidate witnesses for bounded existential search: ψ-values,
  /// their integrals where available, unit multiples, zero.
  virtual std::vector<MValue> witnessGrid(std::size_t budget) const;
};

/// Presentation-backed model. When built from an engine the integrate
/// calls grow the stage; `stage()` always reflects the latest one.
class PresentationModel : public CoupleModel {
public:
  explicit PresentationModel(Presentation p, std::string name = "presentation");
  /// Engine-backed: integrate() delegates to the closure engine.
  explicit PresentationModel(std::shared_ptr<ClosureEngine> engine,
                             std::string name = "closure");

  const Presentation& stage() const;

  std::string name() const override { return name_; }
  MValue zero() const override { return VecElement(); }
  std::optional<MValue> constant(const std::string& name) const override;
  MValue add(const MValue& a, const MValue& b) const override;
  MValue negate(const MValue& a) const override;
  MValue scalarMul(const ScalarValue& c, const MValue& a) const override;
  int signum(const MValue& a) const override;
  std::optional<MValue> psi(const MValue& a) const override;
  bool cutMember(const MValue& a) const override;
  int classCompare(const MValue& a, const MValue& b) const override;
  std::optional<ScalarValue> colon(const MValue& a, const MValue& b) const override;
  Trichotomy classify() const override;
  std::optional<MValue> integrate(const MValue& gamma) const override;
  std::optional<MValue> elementBelowClass(const MValue& a) const override;
  MValue sampleElement(Rng& rng) const override;
  MValue parseValue(const std::string& text) const override;
  std::vector<MValue> witnessGrid(std::size_t budget) const override;

private:
  Presentation fixed_;
  std::shared_ptr<ClosureEngine> engine_; // may be null
  std::string name_;
};

/// The log-monomial couple Γ_L: constants e0, e1, ..., unit 1 = -e0.
class LogModel : public CoupleModel {
public:
  std::string name() const override { return "logm"; }
  MValue zero() const override { return LogElement(); }
  std::optional<MValue> constant(const std::string& name) const override;
  MValue add(const MValue& a, const MValue& b) const override;
  MValue negate(const MValue& a) const override;
  MValue scalarMul(const ScalarValue& c, const MValue& a) const override;
  int signum(const MValue& a) const override;
  std::optional<MValue> psi(const MValue& a) const override;
  bool cutMember(const MValue& a) const override;
  int classCompare(const MValue& a, const MValue& b) const override;
  std::optional<ScalarValue> colon(const MValue& a, const MValue& b) const override;
  Trichotomy classify() const override;
  std::optional<MValue> integrate(const MValue& gamma) const override;
  std::optional<MValue> elementBelowClass(const MValue& a) const override;
  MValue sampleElement(Rng& rng) const override;
  MValue parseValue(const std::string& text) const override;
};

/// Γ_L + Qλ with the gap λ declared in the cut.
class GapLogModel : public CoupleModel {
public:
  std::string name() const override { return "gap"; }
  MValue zero() const override { return GapLogElement{}; }
  std::optional<MValue> constant(const std::string& name) const override;
  MValue add(const MValue& a, const MValue& b) const override;
  MValue negate(const MValue& a) const override;
  MValue scalarMul(const ScalarValue& c, const MValue& a) const override;
  int signum(const MValue& a) const override;
  std::optional<MValue> psi(const MValue& a) const override;
  bool cutMember(const MValue& a) const override;
  int classCompare(const MValue& a, const MValue& b) const override;
  std::optional<ScalarValue> colon(const MValue& a, const MValue& b) const override;
  Trichotomy classify() const override;
  std::optional<bool> cosetClassesInBase(const MValue& a) const override;
  MValue sampleElement(Rng& rng) const override;
  MValue parseValue(const std::string& text) const override;
};

/// The couple of values of bounded-height transmonomials.
class TransModel : public CoupleModel {
public:
  explicit TransModel(unsigned heightBound = kDefaultHeightBound) : heightBound_(heightBound) {}

  unsigned heightBound() const { return heightBound_; }

  std::string name() const override { return "trans"; }
  MValue zero() const override { return TransValue::zero(); }
  std::optional<MValue> constant(const std::string& name) const override;
  MValue add(const MValue& a, const MValue& b) const override;
  MValue negate(const MValue& a) const override;
  MValue scalarMul(const ScalarValue& c, const MValue& a) const override;
  int signum(const MValue& a) const override;
  std::optional<MValue> psi(const MValue& a) const override;
  bool cutMember(const MValue& a) const override;
  int classCompare(const MValue& a, const MValue& b) const override;
  std::optional<ScalarValue> colon(const MValue& a, const MValue& b) const override;
  Trichotomy classify() const override;
  std::optional<MValue> integrate(const MValue& gamma) const override;
  std::optional<MValue> elementBelowClass(const MValue& a) const override;
  MValue sampleElement(Rng& rng) const override;
  MValue parseValue(const std::string& text) const override;

private:
  unsigned heightBound_;
};

bool isDefinablyClosedCriterion(const CoupleModel& m);

/// Built-in handles: "p1", "p2", "logm", "gap", "trans", "trivial>",
/// "trivial<"; anything else is read as a presentation file path.
std::shared_ptr<CoupleModel> makeModel(const std::string& spec);

/// The two-class chain presentation P2 = extendGrounded(P1) with its
/// spec'd basis names.
Presentation presentationP2();

} // namespace hcouple

#endif
