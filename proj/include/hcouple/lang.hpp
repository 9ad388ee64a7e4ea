#ifndef HCOUPLE_LANG_HPP
#define HCOUPLE_LANG_HPP

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hcouple/model.hpp"

namespace hcouple::lang {

enum class Sort { Vector, Scalar };

/// Sort-correct term of the two-sorted language: the vector sort carries
/// 0, 1, ∞, constants, -, +, ψ, sc; the scalar sort carries 0, 1, ∞,
/// rational literals, -, +, ·, and the colon map from vector pairs.
struct Term {
  enum class Kind {
    VZero,
    VOne,
    VInf,
    VName, // model constant or vector variable
    VNeg,
    VAdd,
    VPsi,
    VSc, // args: scalar, vector
    SZero,
    SOne,
    SInf,
    SLit,  // exact rational literal in `name`
    SName, // scalar variable
    SNeg,
    SAdd,
    SMul,
    SColon // args: vector, vector
  };

  Kind kind;
  std::string name;
  std::vector<Term> args;

  Sort sort() const;
  bool operator==(const Term& o) const;
};

struct Formula {
  enum class Kind { VEq, VLt, PPred, SEq, SLt, And, Or, Not, ExistsV, ExistsS, ForallV, ForallS };

  Kind kind;
  std::string var; // quantifiers only
  std::vector<Term> terms;
  std::vector<Formula> sub;

  bool quantifierFree() const;
  /// Free variables (excluding names the model resolves as constants).
  std::vector<std::string> freeVars(const CoupleModel& model) const;
};

/// Parses the ASCII syntax
///   psi(y) = 1,  P(sc(c, y) + -z),  y : z < 1/2,
///   not/and/or,  exists y: ...,  forall y: ...
/// Sorts are inferred: psi/sc/P fix vector positions, * and rational
/// literals fix scalar ones, and anything unconstrained defaults to the
/// vector sort. Throws SyntaxError with position and expectation.
Formula parseFormula(const std::string& text);
Term parseTerm(const std::string& text);

std::string print(const Formula& f);
std::string print(const Term& t);

/// A term value: a vector with ∞, or a scalar with ∞.
struct VectorVal {
  std::optional<MValue> v; // nullopt = ∞
};
using TermValue = std::variant<VectorVal, ExtScalar>;

using Assignment = std::map<std::string, TermValue>;

/// Strict ∞-absorbing evaluation: -∞ = γ+∞ = ψ(0) = ψ(∞) = ∞ on the
/// vector sort, the mirror equations with · on the scalar sort, sc = ∞
/// off k×Γ, and colon = ∞ off its domain.
TermValue evalTerm(const CoupleModel& model, const Term& t, const Assignment& env = {});

/// Exact truth of a closed quantifier-free formula. Throws
/// UnknownConstant for unresolvable names, FormatError on quantifiers.
bool decideQF(const CoupleModel& model, const Formula& f, const Assignment& env = {});

struct ExistsResult {
  bool found = false;
  std::optional<MValue> witness;
  std::size_t tried = 0;
};

/// Bounded existential search over one vector variable: walks the
/// canonical witness grid (ψ-values, their integrals where the model
/// integrates, unit multiples, values of closed vector subterms) and
/// returns a decideQF-verified witness or "unknown within budget" —
/// never "false".
ExistsResult boundedExists(const CoupleModel& model, const Formula& existsFormula,
                           std::size_t budget = 64);

enum class Truth { True, False, Unknown };

/// Partial decision with quantifiers: quantifier-free formulas decide
/// exactly; a leading vector existential searches the witness grid; a
/// leading universal runs as not-exists-not, so refutations are
/// verified and everything else stays Unknown.
Truth boundedDecide(const CoupleModel& model, const Formula& f, std::size_t budget = 64);

struct ScalarFormulaInfo {
  bool isScalar = false;
  std::vector<Term> scalarTerms; // the s_i: the colon subterms
};

/// Recognizes the scalar-formula shape ζ(s_1,...,s_N): every atom lives
/// in the scalar sort and quantified variables, if any, are scalar. The
/// decomposition extracts the colon subterms, the only scalar-valued
/// terms with vector content.
ScalarFormulaInfo isScalarFormula(const Formula& f);

} // namespace hcouple::lang

#endif
