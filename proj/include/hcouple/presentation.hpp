#ifndef HCOUPLE_PRESENTATION_HPP
#define HCOUPLE_PRESENTATION_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hcouple/vec.hpp"

namespace hcouple {

/// ψ-table of a finitely presented couple: one value per nonzero basis
/// class. ψ is constant on classes, so a single VecElement per class
/// determines the whole map.
using PsiTable = std::map<BasisId, VecElement>;

enum class CutKind { PsiDown, PsiDownPlusGap };

/// H-cut data. PsiDown is the downward closure of the Ψ-set; the gap
/// variant is the second cut that exists exactly when the couple has a
/// gap element.
struct HCutSpec {
  CutKind kind = CutKind::PsiDown;
  VecElement gap; // meaningful only for PsiDownPlusGap

  static HCutSpec psiDown() { return {}; }
  static HCutSpec withGap(VecElement g) { return {CutKind::PsiDownPlusGap, std::move(g)}; }

  bool operator==(const HCutSpec& o) const { return kind == o.kind && gap == o.gap; }
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;

  void fail(std::string why) {
    ok = false;
    violations.push_back(std::move(why));
  }
};

enum class TrichotomyKind { Grounded, HasGap, AsymptoticIntegration };

struct Trichotomy {
  TrichotomyKind kind;
  std::optional<VecElement> witness; // max Ψ when grounded, the gap when HasGap

  std::string str() const;
};

/// A finitely presented normalized H-triple over Q or Q(sqrt d), in Hahn
/// normal form: basis classes in declaration order (largest first), one
/// ψ-value per class, an H-cut, and the distinguished unit 1 with
/// ψ(1) = 1. Immutable after construction; all operations are pure.
class Presentation {
public:
  Presentation() = default;
  Presentation(BasisContext ctx, PsiTable psi, HCutSpec cut, VecElement unit,
               unsigned scalarRadicand = 0);

  /// Convenience: the normalized chain seed with a single class
  /// (basis "b1", ψ(b1) = b1 = 1, P = Ψ↓).
  static Presentation seedP1();

  const BasisContext& ctx() const { return ctx_; }
  const PsiTable& psiTable() const { return psi_; }
  const HCutSpec& cut() const { return cut_; }
  const VecElement& unit() const { return unit_; }
  unsigned scalarRadicand() const { return radicand_; }
  std::string scalarFieldName() const;

  bool isTrivial() const { return ctx_.size() == 0; }

  /// Checks every axiom as a finite criterion and reports all
  /// violations; never throws on invalid data.
  ValidationReport validateAxioms() const;

  /// ψ extended by the default value: ∞ for 0 and ∞.
  ExtVec psi(const ExtVec& a) const;

  /// γ' = γ + ψ(γ), with ∞ absorbing.
  ExtVec derive(const ExtVec& a) const;

  /// The predicate P.
  bool cutMember(const VecElement& a) const;

  /// Largest Ψ-value (finite Ψ always has one). Throws TrivialCouple.
  const VecElement& maxPsi() const;

  /// Ψ as the set of table values, smallest first.
  std::vector<VecElement> psiValues() const;

  /// Finitely presented nontrivial couples are always Grounded;
  /// throws TrivialCouple for the zero presentation.
  Trichotomy classifyTrichotomy() const;

  bool operator==(const Presentation& o) const {
    return ctx_ == o.ctx_ && psi_ == o.psi_ && cut_ == o.cut_ && unit_ == o.unit_ &&
           radicand_ == o.radicand_;
  }

private:
  BasisContext ctx_;
  PsiTable psi_;
  HCutSpec cut_;
  VecElement unit_;
  unsigned radicand_ = 0;
  std::optional<VecElement> maxPsi_; // computed eagerly on construction
};

} // namespace hcouple

#endif
