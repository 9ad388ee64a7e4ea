#include "hcouple/closure.hpp"

namespace hcouple {

ClosureEngine::ClosureEngine(Presentation seed) : ClosureEngine(std::move(seed), true) {}

ClosureEngine ClosureEngine::unchecked(Presentation seed) {
  return ClosureEngine(std::move(seed), false);
}

ClosureEngine::ClosureEngine(Presentation seed, bool validate)
    : seed_(std::move(seed)), stage_(seed_) {
  if (!validate)
    return;
  const ValidationReport rep = seed_.validateAxioms();
  if (!rep.ok) {
    std::string why = "seed presentation fails validation";
    for (const auto& v : rep.violations)
      why += "; " + v;
    throw InternalInvariantViolation(why);
  }
  if (seed_.isTrivial())
    throw TrivialCouple("the closure engine needs a normalized nontrivial seed");
  if (seed_.cut().kind != CutKind::PsiDown)
    throw InternalInvariantViolation("closure stages maintain P = Psi-downward only");
}

void ClosureEngine::applyExtension(const ExtensionResult& ext, const std::string& op,
                                   const Json& input) {
  stage_ = ext.extended;
  history_.push_back(ClosureStep{op, input, ext.newBasisId});
}

VecElement ClosureEngine::integrate(VecElement gamma) {
  if (!gamma.wellFormed(stage_.ctx()))
    gamma.leadingId(stage_.ctx()); // throws UnknownBasisId
  const Json inputJson = vecToJson(gamma, stage_.ctx());
  const std::string key = inputJson.dump();
  if (auto it = integrateCache_.find(key); it != integrateCache_.end())
    return it->second;

  // finite search: α = γ - ψ(c) accepted when [α] = c; uniqueness of the
  // accepting class follows from strict monotonicity of the derivation
  std::vector<VecElement> accepted;
  for (const auto& id : stage_.ctx().order()) {
    const VecElement alpha = gamma - stage_.psiTable().at(id);
    if (archClass(alpha, stage_.ctx()) == ArchClass::of(id))
      accepted.push_back(alpha);
  }
  if (accepted.size() > 1)
    throw InternalInvariantViolation("two classes accept the same integral of " + gamma.str());

  VecElement answer;
  if (!accepted.empty()) {
    answer = accepted.front();
    history_.push_back(ClosureStep{"integrate", inputJson, {}});
  } else {
    // the only non-integrable element of a grounded Hahn-type stage is
    // max Ψ; anything else here is a real invariant violation
    if (gamma != stage_.maxPsi())
      throw InternalInvariantViolation("no class accepts the integral of " + gamma.str() +
                                       " although it is not max Psi");
    const ExtensionResult ext = extendGrounded(stage_);
    applyExtension(ext, "integrate", inputJson);
    answer = ext.adjoinedElement;
  }

  const ExtVec check = stage_.derive(ExtVec(answer));
  if (check.isInf() || check.finite() != gamma)
    throw InternalInvariantViolation("integration postcondition failed for " + gamma.str());
  integrateCache_.emplace(key, answer);
  return answer;
}

VecElement ClosureEngine::psiPreimage(VecElement beta) {
  if (!beta.wellFormed(stage_.ctx()))
    beta.leadingId(stage_.ctx());
  if (!stage_.cutMember(beta))
    throw NotInCut("beta = " + beta.str() + " lies above the cut of the current stage");
  const Json inputJson = vecToJson(beta, stage_.ctx());
  const std::string key = inputJson.dump();
  if (auto it = preimageCache_.find(key); it != preimageCache_.end())
    return it->second;

  VecElement answer;
  bool found = false;
  for (const auto& id : stage_.ctx().order()) {
    if (stage_.psiTable().at(id) == beta) {
      answer = VecElement::unitVector(id);
      found = true;
      break;
    }
  }
  if (found) {
    history_.push_back(ClosureStep{"psi-preimage", inputJson, {}});
  } else {
    const ExtensionResult ext = adjoinPsiValue(stage_, beta);
    applyExtension(ext, "psi-preimage", inputJson);
    answer = ext.adjoinedElement;
  }

  const ExtVec check = stage_.psi(ExtVec(answer));
  if (check.isInf() || check.finite() != beta || answer.signum(stage_.ctx()) <= 0)
    throw InternalInvariantViolation("psi-preimage postcondition failed for " + beta.str());
  preimageCache_.emplace(key, answer);
  return answer;
}

Json ClosureEngine::historyToJson() const {
  Json steps = Json::array();
  for (const auto& s : history_) {
    steps.push_back(Json{{"op", s.op}, {"input", s.input}, {"adjoinedBasisId", s.adjoinedBasisId}});
  }
  return Json{{"seed", presentationToJson(seed_)}, {"steps", steps}};
}

ClosureEngine ClosureEngine::replay(Presentation seed, const Json& historyLog) {
  ClosureEngine engine(std::move(seed));
  if (!historyLog.contains("steps"))
    throw FormatError("history log is missing \"steps\"");
  for (const auto& step : historyLog["steps"]) {
    const auto op = step.at("op").get<std::string>();
    const VecElement input = vecFromJson(step.at("input"));
    const std::size_t before = engine.history().size();
    if (op == "integrate")
      engine.integrate(input);
    else if (op == "psi-preimage")
      engine.psiPreimage(input);
    else
      throw FormatError("unknown history op '" + op + "'");
    const auto recorded = step.at("adjoinedBasisId").get<std::string>();
    std::string actual; // cache hits (duplicate inputs) record nothing
    if (engine.history().size() > before)
      actual = engine.history().back().adjoinedBasisId;
    if (recorded != actual)
      throw FormatError("replay diverged: step adjoined '" + actual + "', log says '" + recorded +
                        "'");
  }
  return engine;
}

bool isDefinablyClosedCriterion(const Presentation& p) {
  if (p.isTrivial())
    return false;
  return p.classifyTrichotomy().kind == TrichotomyKind::AsymptoticIntegration;
}

} // namespace hcouple
