#ifndef HCOUPLE_EXTEND_HPP
#define HCOUPLE_EXTEND_HPP

#include <map>
#include <string>
#include <vector>

#include "hcouple/presentation.hpp"

namespace hcouple {

/// Result of one extension step: the new validated presentation, the
/// adjoined element expressed in the new coordinates, the embedding of
/// the old basis (always identity on ids), and the predicted Ψ-set for
/// cross-checking against the actual table.
struct ExtensionResult {
  Presentation extended;
  BasisId newBasisId;                   // empty for scalarExtend
  std::map<BasisId, BasisId> embedding; // old id -> new id
  VecElement adjoinedElement;           // the α of the construction
  std::vector<VecElement> predictedPsi; // smallest first
  std::string note;
};

enum class GapRemovalSign { Positive, Negative };

/// Removes a declared gap by adjoining α with α' = gap (new bottom
/// class, ψ-value gap - α, cut collapses to Ψ↓). A validated nontrivial
/// finitely presented couple is grounded and carries no gap cut, so at
/// this level the operation only fires on the trivial couple with the
/// {0} cut; the negative sign yields the one-class normalized couple.
/// Throws NoGap when the cut is Ψ↓, HypothesisViolation when the result
/// cannot be normalized (positive removal from the trivial couple).
ExtensionResult removeGap(const Presentation& p, GapRemovalSign sign);

/// Adjoins α < 0 with α' = max Ψ: a new smallest class with ψ-value
/// max Ψ - α. The new Ψ-set gains a strictly larger maximum. Throws
/// TrivialCouple.
ExtensionResult extendGrounded(const Presentation& p);

/// Inserts a new class at `position` in the chain (0 = above all
/// classes, size() = below all) with ψ-value `beta`. Checks the
/// hypotheses (ψ-values of higher classes ≤ beta ≤ ψ-values of lower
/// ones, beta below (Γ^>)', beta not already a ψ-value) and throws
/// HypothesisViolation naming the failing inequality.
ExtensionResult insertClass(const Presentation& p, std::size_t position, const VecElement& beta);

/// Adjoins α > 0 with ψ(α) = beta for beta ∈ P \ Ψ; the class position
/// is forced by order-reversal of ψ. Throws NotInCut, AlreadyPsiValue.
ExtensionResult adjoinPsiValue(const Presentation& p, const VecElement& beta);

/// Base change Q -> Q(sqrt d): same basis, same ψ-table, coefficients
/// now range over the extension. Ψ and the trichotomy verdict are
/// unchanged. Throws UnsupportedFieldPair.
ExtensionResult scalarExtend(const Presentation& p, unsigned targetRadicand);

/// Applies an id embedding to an element (identity on coefficients).
VecElement mapVec(const VecElement& v, const std::map<BasisId, BasisId>& embedding);

/// Checks that order, ψ, derivation and cut membership commute with the
/// embedding on the given old-group samples, and that the predicted
/// Ψ-set equals the actual one. Returns an explanation on failure.
bool verifyEmbedding(const Presentation& oldP, const ExtensionResult& ext,
                     const std::vector<VecElement>& samples, std::string* why = nullptr);

} // namespace hcouple

#endif
