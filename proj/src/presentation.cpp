#include "hcouple/presentation.hpp"

#include <algorithm>

namespace hcouple {

std::string Trichotomy::str() const {
  switch (kind) {
  case TrichotomyKind::Grounded:
    return "grounded, max Psi = " + witness->str();
  case TrichotomyKind::HasGap:
    return "gap at " + witness->str();
  case TrichotomyKind::AsymptoticIntegration:
    return "asymptotic integration";
  }
  return {};
}

Presentation::Presentation(BasisContext ctx, PsiTable psi, HCutSpec cut, VecElement unit,
                           unsigned scalarRadicand)
    : ctx_(std::move(ctx)), psi_(std::move(psi)), cut_(std::move(cut)), unit_(std::move(unit)),
      radicand_(scalarRadicand) {
  const VecElement* best = nullptr;
  for (const auto& [id, val] : psi_) {
    if (best == nullptr || vecCompare(*best, val, ctx_) == Ordering::LT)
      best = &val;
  }
  if (best != nullptr)
    maxPsi_ = *best;
}

Presentation Presentation::seedP1() {
  const VecElement b1 = VecElement::unitVector("b1");
  return Presentation(BasisContext({"b1"}), PsiTable{{"b1", b1}}, HCutSpec::psiDown(), b1);
}

std::string Presentation::scalarFieldName() const {
  return radicand_ == 0 ? "Q" : "Q(sqrt" + std::to_string(radicand_) + ")";
}

namespace {

bool coeffsInField(const VecElement& v, unsigned radicand) {
  for (const auto& [id, c] : v.support()) {
    (void)id;
    if (c.radicand() != 0 && c.radicand() != radicand)
      return false;
  }
  return true;
}

} // namespace

ValidationReport Presentation::validateAxioms() const {
  ValidationReport rep;

  // structural layer
  for (const auto& id : ctx_.order()) {
    if (psi_.count(id) == 0)
      rep.fail("psi table missing a value for class [" + id + "]");
  }
  for (const auto& [id, val] : psi_) {
    if (!ctx_.contains(id))
      rep.fail("psi table keyed by unknown basis id '" + id + "'");
    else if (!val.wellFormed(ctx_))
      rep.fail("psi value for [" + id + "] mentions an unknown basis id");
    if (!coeffsInField(val, radicand_))
      rep.fail("psi value for [" + id + "] has coefficients outside " + scalarFieldName());
  }
  if (!unit_.wellFormed(ctx_))
    rep.fail("unit mentions an unknown basis id");
  if (cut_.kind == CutKind::PsiDownPlusGap && !cut_.gap.wellFormed(ctx_))
    rep.fail("gap element mentions an unknown basis id");
  if (!rep.ok)
    return rep;

  if (isTrivial()) {
    // the zero couple: Ψ is empty, both cuts (∅ and {0}) are H-cuts, and
    // there is no unit to normalize
    if (!unit_.isZero())
      rep.fail("trivial couple cannot carry a unit");
    if (cut_.kind == CutKind::PsiDownPlusGap && !cut_.gap.isZero())
      rep.fail("trivial couple admits only the zero gap cut");
    return rep;
  }

  // (HC) + Hahn-type injectivity: ψ-values strictly increase as classes
  // shrink down the chain
  const auto& order = ctx_.order();
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    const VecElement& hi = psi_.at(order[i]);
    const VecElement& lo = psi_.at(order[i + 1]);
    if (vecCompare(hi, lo, ctx_) != Ordering::LT)
      rep.fail("HC/injectivity: psi[" + order[i] + "] = " + hi.str() + " must be < psi[" +
               order[i + 1] + "] = " + lo.str());
  }

  // (AC3), finite criterion: whenever p_j > p_i, the difference must drop
  // strictly below class c_i. Positive elements of class c_i scale
  // arbitrarily small within the class, so this is equivalent to the
  // quantified axiom.
  for (const auto& idI : order) {
    const VecElement& pi = psi_.at(idI);
    for (const auto& idJ : order) {
      const VecElement& pj = psi_.at(idJ);
      if (vecCompare(pj, pi, ctx_) != Ordering::GT)
        continue;
      const ArchClass diffClass = archClass(pj - pi, ctx_);
      if (classCompare(diffClass, ArchClass::of(idI), ctx_) != Ordering::LT)
        rep.fail("AC3: [psi[" + idJ + "] - psi[" + idI + "]] = " + diffClass.str() +
                 " is not below class [" + idI + "]");
    }
  }

  // normalization: 1 > 0 and ψ(1) = 1
  if (unit_.signum(ctx_) <= 0) {
    rep.fail("unit must be positive");
  } else {
    const VecElement& pu = psi_.at(unit_.leadingId(ctx_));
    if (pu != unit_)
      rep.fail("unit fixed-point law fails: psi(1) = " + pu.str() + " but 1 = " + unit_.str());
  }

  // cut: Ψ ⊆ P < (Γ^>)' with P = (≤ gap). Over a finitely presented
  // couple gap > max Ψ forces [gap - maxΨ] below the smallest class,
  // which no nonzero element achieves, so only gap = max Ψ could pass
  // the bound — and that collapses to PsiDown.
  if (cut_.kind == CutKind::PsiDownPlusGap) {
    const VecElement& g = cut_.gap;
    if (vecCompare(g, *maxPsi_, ctx_) != Ordering::GT) {
      rep.fail("gap cut: gap " + g.str() + " does not lie strictly above max Psi");
    } else {
      for (const auto& idI : order) {
        const VecElement diff = g - psi_.at(idI);
        if (diff.signum(ctx_) <= 0)
          continue;
        if (classCompare(archClass(diff, ctx_), ArchClass::of(idI), ctx_) != Ordering::LT)
          rep.fail("gap cut: gap is not below (Gamma^>)' at class [" + idI + "]");
      }
    }
  }

  return rep;
}

ExtVec Presentation::psi(const ExtVec& a) const {
  if (a.isInf() || a.finite().isZero())
    return ExtVec::infinity();
  return ExtVec(psi_.at(a.finite().leadingId(ctx_)));
}

ExtVec Presentation::derive(const ExtVec& a) const { return a + psi(a); }

bool Presentation::cutMember(const VecElement& a) const {
  if (isTrivial()) {
    // P = ∅ for psidown (Ψ empty), P = {0} for the zero-gap cut
    return cut_.kind == CutKind::PsiDownPlusGap && a.isZero();
  }
  const VecElement& bound = cut_.kind == CutKind::PsiDownPlusGap ? cut_.gap : *maxPsi_;
  return vecCompare(a, bound, ctx_) != Ordering::GT;
}

const VecElement& Presentation::maxPsi() const {
  if (!maxPsi_)
    throw TrivialCouple("the zero presentation has an empty Psi-set");
  return *maxPsi_;
}

std::vector<VecElement> Presentation::psiValues() const {
  std::vector<VecElement> out;
  out.reserve(ctx_.size());
  // class order is largest first, so ψ-values come out smallest first
  for (const auto& id : ctx_.order())
    out.push_back(psi_.at(id));
  return out;
}

Trichotomy Presentation::classifyTrichotomy() const {
  return Trichotomy{TrichotomyKind::Grounded, maxPsi()};
}

} // namespace hcouple
