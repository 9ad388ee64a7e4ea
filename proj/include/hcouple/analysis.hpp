#ifndef HCOUPLE_ANALYSIS_HPP
#define HCOUPLE_ANALYSIS_HPP

#include "hcouple/model.hpp"

namespace hcouple {

/// Finite generating set of the base group Γ inside an ambient model,
/// or the model's designated dense base (the log-monomial group inside
/// its gap extension).
struct GeneratingSet {
  std::vector<MValue> gens;
  bool wholeBase = false;

  static GeneratingSet of(std::vector<MValue> g) { return {std::move(g), false}; }
  static GeneratingSet base() { return {{}, true}; }
};

/// Class-echelon form of a finite set: distinct nonzero archimedean
/// classes, largest first. The Hahn property makes same-class reduction
/// exact, so the echelon size is the linear rank.
std::vector<MValue> classEchelon(const CoupleModel& m, std::vector<MValue> xs);

/// Greedy class-by-class reduction of x against an echelon; the
/// remainder's class lies outside the echelon classes (or the remainder
/// is zero, meaning x was in the span).
MValue reduceAgainst(const CoupleModel& m, MValue x, const std::vector<MValue>& echelon);

/// Exact linear rank over the scalar field.
std::size_t spanRank(const CoupleModel& m, const std::vector<MValue>& elements);

enum class CaseVerdict { CaseA, CaseCn, CaseDn, UndeterminedAfter };

std::string caseVerdictStr(CaseVerdict v, unsigned n);

/// The simple-extension classifier's output: the verdict together with
/// the witnessing sequences. The recursion equations
/// β_0 = β - α_0, β_{i+1} = β_i† - α_{i+1} hold exactly in every
/// report, the daggers strictly increase, and the classes strictly
/// decrease and avoid [Γ].
struct ClassifierReport {
  CaseVerdict verdict = CaseVerdict::UndeterminedAfter;
  unsigned n = 0; // case subscript; for UndeterminedAfter the certified prefix length
  MValue beta;
  std::vector<MValue> alphas;      // α_0 .. α_n
  std::vector<MValue> betas;       // β_0 .. β_n
  std::vector<MValue> betaDaggers; // β_0† .. β_n†
  std::vector<MValue> psiSpan;     // Ψ of the base (one value per echelon class)
  std::vector<MValue> predictedPsiNew; // Ψ_β = Ψ ∪ these
  std::string note;
};

/// Runs the simple-extension case analysis of the ambient couple over
/// span(Γ) at β ∉ span(Γ). α_i is always the greedy class-by-class
/// best approximation. Verdicts:
///   CaseA               (Γ + kβ)† = Γ†;
///   CaseDn(n)           β_n† ∈ Γ \ Γ†;
///   CaseCn(n)           β_n† ∉ Γ and (Γ + kβ_n†)† = Γ†;
///   UndeterminedAfter(N) the certified prefix of the limit case after
///                       N steps.
/// Throws BetaInSpan, InvalidSubcouple (span not ψ-closed, or the
/// strictly-increasing dagger invariant failed, which means the base
/// lies outside the hypotheses of the case analysis).
ClassifierReport classifySimpleExtension(const CoupleModel& model, const GeneratingSet& gamma,
                                         const MValue& beta, unsigned maxSteps = 32);

struct CheckReport {
  bool ok = true;
  std::vector<std::string> failures;
  std::vector<std::string> passed;

  void check(bool cond, const std::string& what) {
    if (cond)
      passed.push_back(what);
    else {
      ok = false;
      failures.push_back(what);
    }
  }
};

/// Verifies every finitely checkable guarantee attached to the
/// report's verdict (dagger chain, class chain, Ψ_β prediction,
/// no-gap-element condition on sampled combinations, ...). Sampled
/// checks draw from rng.
CheckReport caseInvariants(const CoupleModel& model, const GeneratingSet& gamma,
                           const ClassifierReport& report, Rng& rng, int samples = 50);

struct KeyIntervalResult {
  MValue delta;
  CheckReport certification;
};

/// A radius δ > 0 with [δ] < [β_0] such that every β + ε with
/// |ε| < δ (sampled at [ε] < [β_0]) reproduces the report with
/// β_{0,ε} = β_0 + ε and β_{i,ε} = β_i for i ≥ 1. Throws
/// NoSmallerClassAvailable when the ambient has no class below [β_0].
KeyIntervalResult keyIntervalRadius(const CoupleModel& model, const GeneratingSet& gamma,
                                    const ClassifierReport& report, Rng& rng, int samples = 20);

/// ψ-iterate data: shifts α_1..α_n and coefficients c_1..c_n.
struct PsiIterSpec {
  std::vector<MValue> shifts;
  std::vector<ScalarValue> coeffs;
};

/// ψ_{α_1,...,α_n}(γ), nullopt encoding ∞.
std::optional<MValue> psiIter(const CoupleModel& model, const std::vector<MValue>& shifts,
                              const MValue& gamma);

/// γ ∈ D_α ⟺ the full iterate is finite.
bool inPsiIterDomain(const CoupleModel& model, const std::vector<MValue>& shifts,
                     const MValue& gamma);

/// γ + c_1 ψ_{α_1}(γ) + ... + c_n ψ_{α_1..α_n}(γ); nullopt off D_α.
std::optional<MValue> psiIterObjective(const CoupleModel& model, const PsiIterSpec& spec,
                                       const MValue& gamma);

/// Segment test by probing equally spaced points of [a, b]; convexity
/// of the excluded sets makes a clean probe line strong evidence of a
/// single component.
bool sameComponentSampled(const CoupleModel& model, const std::vector<MValue>& shifts,
                          const MValue& a, const MValue& b, int probes = 16);

/// Solves γ + Σ c_i ψ_{α_1..α_i}(γ) = target for γ ∈ D_α by the
/// ψ-refinement iteration γ ← target - Σ c_i ψ_{...}(γ): each step
/// strictly shrinks the class of the error because ψ-iterate
/// differences are o of argument differences. Exact-zero collisions
/// with excluded points are displaced by an ε below every class in
/// play, which leaves all finite ψ-levels unchanged. The solution is
/// unique by strict monotonicity; the result is checked exactly.
/// Throws NotConverged when the iteration leaves the materialized
/// fragment.
MValue solveMonotone(const CoupleModel& model, const PsiIterSpec& spec, const MValue& target,
                     unsigned maxIter = 64);

struct DaggerApprox {
  MValue alpha0;
  MValue dagger;      // (β - α_0)†
  bool daggerInSpan;  // when true the maximality claim does not apply
};

/// Greedy best approximation α_0 of β from span(Γ) and the dagger of
/// the remainder; when that dagger lies outside the span it is the
/// maximum of (β - α)† over all α (checked against samples by the
/// caller or caseInvariants).
DaggerApprox bestApproxDagger(const CoupleModel& model, const std::vector<MValue>& gens,
                              const MValue& beta);

} // namespace hcouple

#endif
