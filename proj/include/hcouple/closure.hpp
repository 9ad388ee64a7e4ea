#ifndef HCOUPLE_CLOSURE_HPP
#define HCOUPLE_CLOSURE_HPP

#include <map>
#include <string>
#include <vector>

#include "hcouple/extend.hpp"
#include "hcouple/serialize.hpp"

namespace hcouple {

/// One step of engine history. `input` is serialized against the basis
/// context current at query time, which makes logs replayable
/// bit-for-bit.
struct ClosureStep {
  std::string op; // "integrate" | "psi-preimage"
  Json input;
  BasisId adjoinedBasisId; // empty when the stage did not grow
};

/// Lazy, query-driven approximation of the H-closure of a finitely
/// presented normalized triple. The stage grows by at most one
/// extension per query (a grounded Hahn-type stage has exactly one
/// non-integrable element, max Ψ), every stage stays grounded and
/// normalized with P = Ψ↓, and every extension step is either
/// extendGrounded or adjoinPsiValue.
///
/// An engine instance requires exclusive access while mutating; frozen
/// snapshots (copies of stage()) are freely shareable.
class ClosureEngine {
public:
  /// Validates the seed; throws InternalInvariantViolation listing the
  /// violations when it does not pass.
  explicit ClosureEngine(Presentation seed);

  /// Test-only escape hatch: skips seed validation so that the loud
  /// failure paths can be exercised.
  static ClosureEngine unchecked(Presentation seed);

  const Presentation& seed() const { return seed_; }
  const Presentation& stage() const { return stage_; }
  const std::vector<ClosureStep>& history() const { return history_; }

  /// The unique α with α' = γ, extending the stage by one
  /// extendGrounded step when γ = max Ψ. The returned answer satisfies
  /// derive(α) = γ exactly (checked). Throws
  /// InternalInvariantViolation if no class accepts although γ ≠ max Ψ
  /// — that would contradict groundedness and is surfaced, never
  /// patched.
  VecElement integrate(VecElement gamma);

  /// Some α > 0 with ψ(α) = β for β ∈ P, adjoining a new class when
  /// β ∉ Ψ. Throws NotInCut.
  VecElement psiPreimage(VecElement beta);

  Json historyToJson() const;

  /// Reruns a saved history from its seed; the resulting stages are
  /// byte-identical to the original run. Throws FormatError when the
  /// log does not match what the engine would do.
  static ClosureEngine replay(Presentation seed, const Json& historyLog);

private:
  ClosureEngine(Presentation seed, bool validate);

  void applyExtension(const ExtensionResult& ext, const std::string& op, const Json& input);

  Presentation seed_;
  Presentation stage_;
  std::vector<ClosureStep> history_;
  std::map<std::string, VecElement> integrateCache_;
  std::map<std::string, VecElement> preimageCache_;
};

/// Definable closure criterion: true iff the couple has asymptotic
/// integration. Finitely presented couples never do (nontrivial ones
/// are grounded); the model-handle overload lives with the models.
bool isDefinablyClosedCriterion(const Presentation& p);

} // namespace hcouple

#endif
