#include "hcouple/extend.hpp"

#include <algorithm>
#include <set>

namespace hcouple {

namespace {

std::map<BasisId, BasisId> identityEmbedding(const BasisContext& ctx) {
  std::map<BasisId, BasisId> emb;
  for (const auto& id : ctx.order())
    emb[id] = id;
  return emb;
}

std::vector<VecElement> plusValue(std::vector<VecElement> psi, const VecElement& beta,
                                  const BasisContext& newCtx) {
  psi.push_back(beta);
  std::sort(psi.begin(), psi.end(), [&](const VecElement& a, const VecElement& b) {
    return vecCompare(a, b, newCtx) == Ordering::LT;
  });
  return psi;
}

void requireRevalidates(const ExtensionResult& r, const char* op) {
  const ValidationReport rep = r.extended.validateAxioms();
  if (!rep.ok) {
    std::string why;
    for (const auto& v : rep.violations)
      why += "; " + v;
    throw InternalInvariantViolation(std::string(op) + " produced an invalid presentation" + why);
  }
  // the predicted Ψ-set must be exactly the table's value set
  std::set<VecElement> actual, predicted;
  for (const auto& [id, val] : r.extended.psiTable()) {
    (void)id;
    actual.insert(val);
  }
  predicted.insert(r.predictedPsi.begin(), r.predictedPsi.end());
  if (actual != predicted)
    throw InternalInvariantViolation(std::string(op) + ": predicted Psi-set mismatch");
}

} // namespace

ExtensionResult removeGap(const Presentation& p, GapRemovalSign sign) {
  if (p.cut().kind != CutKind::PsiDownPlusGap)
    throw NoGap("cut is psidown; finitely presented nontrivial couples are grounded "
                "and admit no gap element");

  // Only the trivial couple carries a validated gap cut at this level
  // (its gap is 0); nontrivial presentations never validate one.
  if (!p.isTrivial())
    throw NoGap("declared gap cut does not validate on a nontrivial finitely "
                "presented couple");
  if (sign == GapRemovalSign::Positive)
    throw HypothesisViolation(
        "positive gap removal from the trivial couple yields Psi inside Gamma^<, which "
        "cannot be normalized; use the negative variant");

  // α = -u < 0, α' = 0, ψ(u-class) = gap - α = u: the one-class
  // normalized couple, with u as its fixed point.
  const BasisId u = p.ctx().freshId();
  const VecElement uVec = VecElement::unitVector(u);
  ExtensionResult r;
  r.newBasisId = u;
  r.embedding = identityEmbedding(p.ctx());
  r.adjoinedElement = -uVec;
  r.extended = Presentation(BasisContext({u}), PsiTable{{u, uVec}}, HCutSpec::psiDown(), uVec,
                            p.scalarRadicand());
  r.predictedPsi = {uVec};
  r.note = "removed gap 0 of the trivial couple; adjoined alpha = -" + u + " with alpha' = 0";
  requireRevalidates(r, "removeGap");
  return r;
}

ExtensionResult extendGrounded(const Presentation& p) {
  if (p.isTrivial())
    throw TrivialCouple("cannot extend the zero presentation below its classes");

  const VecElement beta = p.maxPsi();
  const BasisId u = p.ctx().freshId();
  const BasisContext newCtx = p.ctx().withInserted(u, p.ctx().size());
  const VecElement uVec = VecElement::unitVector(u);

  PsiTable table = p.psiTable();
  table[u] = beta + uVec; // β - α with α = -u

  ExtensionResult r;
  r.newBasisId = u;
  r.embedding = identityEmbedding(p.ctx());
  r.adjoinedElement = -uVec;
  r.extended =
      Presentation(newCtx, std::move(table), HCutSpec::psiDown(), p.unit(), p.scalarRadicand());
  r.predictedPsi = plusValue(p.psiValues(), beta + uVec, newCtx);
  r.note = "adjoined alpha = -" + u + " with alpha' = max Psi = " + beta.str();
  requireRevalidates(r, "extendGrounded");
  return r;
}

ExtensionResult insertClass(const Presentation& p, std::size_t position, const VecElement& beta) {
  if (p.isTrivial())
    throw TrivialCouple("insertClass needs at least one existing class");
  if (!beta.wellFormed(p.ctx()))
    beta.leadingId(p.ctx()); // throws UnknownBasisId
  if (position > p.ctx().size())
    throw HypothesisViolation("class position out of range");

  const auto& order = p.ctx().order();
  for (const auto& id : order) {
    if (p.psiTable().at(id) == beta)
      throw HypothesisViolation("beta = " + beta.str() + " is already the psi-value of class [" +
                                id + "]; Hahn type forbids repeating it");
  }
  // classes above the cut position must have ψ-value ≤ β
  for (std::size_t i = 0; i < position; ++i) {
    const VecElement& pi = p.psiTable().at(order[i]);
    if (vecCompare(pi, beta, p.ctx()) == Ordering::GT)
      throw HypothesisViolation("hypothesis fails: psi[" + order[i] + "] = " + pi.str() +
                                " > beta = " + beta.str());
  }
  // classes below must have ψ-value ≥ β
  for (std::size_t i = position; i < order.size(); ++i) {
    const VecElement& pi = p.psiTable().at(order[i]);
    if (vecCompare(beta, pi, p.ctx()) == Ordering::GT)
      throw HypothesisViolation("hypothesis fails: beta = " + beta.str() + " > psi[" + order[i] +
                                "] = " + pi.str());
  }
  // β < (Γ^>)': at every class c, beta ≤ ψ(c) or [beta - ψ(c)] < c
  for (const auto& id : order) {
    const VecElement diff = beta - p.psiTable().at(id);
    if (diff.signum(p.ctx()) <= 0)
      continue;
    if (classCompare(archClass(diff, p.ctx()), ArchClass::of(id), p.ctx()) != Ordering::LT)
      throw HypothesisViolation("hypothesis fails: beta is not below (Gamma^>)' at class [" + id +
                                "]");
  }

  const BasisId u = p.ctx().freshId();
  const BasisContext newCtx = p.ctx().withInserted(u, position);
  PsiTable table = p.psiTable();
  table[u] = beta;

  ExtensionResult r;
  r.newBasisId = u;
  r.embedding = identityEmbedding(p.ctx());
  r.adjoinedElement = VecElement::unitVector(u);
  r.extended = Presentation(newCtx, std::move(table), p.cut(), p.unit(), p.scalarRadicand());
  r.predictedPsi = plusValue(p.psiValues(), beta, newCtx);
  r.note = "inserted class [" + u + "] at position " + std::to_string(position) +
           " with psi-value " + beta.str();
  requireRevalidates(r, "insertClass");
  return r;
}

ExtensionResult adjoinPsiValue(const Presentation& p, const VecElement& beta) {
  if (p.isTrivial())
    throw TrivialCouple("adjoinPsiValue needs a normalized base");
  if (!p.cutMember(beta))
    throw NotInCut("beta = " + beta.str() + " lies above the cut");

  // ψ is order-reversing, so the ψ-value chain (smallest first, one per
  // class from the largest class down) pins the unique slot for beta.
  const auto& order = p.ctx().order();
  std::size_t pos = order.size();
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Ordering c = vecCompare(beta, p.psiTable().at(order[i]), p.ctx());
    if (c == Ordering::EQ)
      throw AlreadyPsiValue("beta = " + beta.str() + " is psi of class [" + order[i] + "]");
    if (c == Ordering::LT) {
      pos = i;
      break;
    }
  }
  // beta ∈ P = Ψ↓ and beta ∉ Ψ force a slot strictly inside the chain
  if (pos == order.size())
    throw InternalInvariantViolation("cut member above every psi-value");
  return insertClass(p, pos, beta);
}

ExtensionResult scalarExtend(const Presentation& p, unsigned targetRadicand) {
  if (p.scalarRadicand() != 0 && p.scalarRadicand() != targetRadicand)
    throw UnsupportedFieldPair("no embedding of " + p.scalarFieldName() + " into Q(sqrt" +
                               std::to_string(targetRadicand) + ") is supported");
  if (targetRadicand != 0 && targetRadicand < 2)
    throw UnsupportedFieldPair("radicand must be >= 2");

  ExtensionResult r;
  r.embedding = identityEmbedding(p.ctx());
  r.extended = Presentation(p.ctx(), p.psiTable(), p.cut(), p.unit(), targetRadicand);
  r.predictedPsi = p.psiValues();
  r.note = "scalar extension " + p.scalarFieldName() + " -> " + r.extended.scalarFieldName();
  if (!p.isTrivial())
    requireRevalidates(r, "scalarExtend");
  return r;
}

VecElement mapVec(const VecElement& v, const std::map<BasisId, BasisId>& embedding) {
  VecElement out;
  for (const auto& [id, c] : v.support())
    out = out.withCoeff(embedding.at(id), c);
  return out;
}

bool verifyEmbedding(const Presentation& oldP, const ExtensionResult& ext,
                     const std::vector<VecElement>& samples, std::string* why) {
  const Presentation& newP = ext.extended;
  auto fail = [&](const std::string& msg) {
    if (why != nullptr)
      *why = msg;
    return false;
  };

  // ψ-table pointwise: every old class keeps its ψ-value
  for (const auto& [id, val] : oldP.psiTable()) {
    const auto it = ext.embedding.find(id);
    if (it == ext.embedding.end())
      return fail("embedding misses basis id " + id);
    if (newP.psiTable().at(it->second) != mapVec(val, ext.embedding))
      return fail("psi of class [" + id + "] changed under the embedding");
  }

  for (std::size_t i = 0; i < samples.size(); ++i) {
    const VecElement& a = samples[i];
    const VecElement b = samples[(i + 1) % samples.size()];
    const VecElement ma = mapVec(a, ext.embedding);
    const VecElement mb = mapVec(b, ext.embedding);
    if (vecCompare(a, b, oldP.ctx()) != vecCompare(ma, mb, newP.ctx()))
      return fail("order not preserved at " + a.str() + " vs " + b.str());
    const ExtVec oldPsi = oldP.psi(a);
    const ExtVec newPsi = newP.psi(ma);
    const bool psiMatches = oldPsi.isInf() ? newPsi.isInf()
                                           : (!newPsi.isInf() && newPsi.finite() ==
                                                                     mapVec(oldPsi.finite(),
                                                                            ext.embedding));
    if (!psiMatches)
      return fail("psi not preserved at " + a.str());
    if (oldP.cutMember(a) != newP.cutMember(ma))
      return fail("cut membership not preserved at " + a.str());
  }

  // predicted Ψ-set equals the actual value set
  std::set<VecElement> actual, predicted;
  for (const auto& [id, val] : newP.psiTable()) {
    (void)id;
    actual.insert(val);
  }
  predicted.insert(ext.predictedPsi.begin(), ext.predictedPsi.end());
  if (actual != predicted)
    return fail("predicted Psi-set differs from the actual one");
  return true;
}

} // namespace hcouple
