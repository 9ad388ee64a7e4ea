#include <algorithm>

#include "hcouple/lang.hpp"

namespace hcouple::lang {

namespace {

const VectorVal& asVectorVal(const TermValue& v) {
  if (const auto* p = std::get_if<VectorVal>(&v))
    return *p;
  throw FormatError("scalar value used in a vector position");
}

const ExtScalar& asScalarVal(const TermValue& v) {
  if (const auto* p = std::get_if<ExtScalar>(&v))
    return *p;
  throw FormatError("vector value used in a scalar position");
}

} // namespace

TermValue evalTerm(const CoupleModel& model, const Term& t, const Assignment& env) {
  using K = Term::Kind;
  switch (t.kind) {
  case K::VZero:
    return VectorVal{model.zero()};
  case K::VOne: {
    const auto one = model.constant("1");
    if (!one)
      throw UnknownConstant("1");
    return VectorVal{*one};
  }
  case K::VInf:
    return VectorVal{std::nullopt};
  case K::VName: {
    if (const auto it = env.find(t.name); it != env.end())
      return TermValue(asVectorVal(it->second));
    if (const auto c = model.constant(t.name))
      return VectorVal{*c};
    throw UnknownConstant(t.name);
  }
  case K::VNeg: {
    const VectorVal a = asVectorVal(evalTerm(model, t.args[0], env));
    if (!a.v)
      return VectorVal{std::nullopt}; // -inf = inf
    return VectorVal{model.negate(*a.v)};
  }
  case K::VAdd: {
    const VectorVal a = asVectorVal(evalTerm(model, t.args[0], env));
    const VectorVal b = asVectorVal(evalTerm(model, t.args[1], env));
    if (!a.v || !b.v)
      return VectorVal{std::nullopt}; // γ+inf = inf+γ = inf+inf = inf
    return VectorVal{model.add(*a.v, *b.v)};
  }
  case K::VPsi: {
    const VectorVal a = asVectorVal(evalTerm(model, t.args[0], env));
    if (!a.v)
      return VectorVal{std::nullopt}; // psi(inf) = inf
    const auto p = model.psi(*a.v);   // psi(0) = inf inside the model
    return VectorVal{p};
  }
  case K::VSc: {
    const ExtScalar c = asScalarVal(evalTerm(model, t.args[0], env));
    const VectorVal a = asVectorVal(evalTerm(model, t.args[1], env));
    if (c.isInf() || !a.v)
      return VectorVal{std::nullopt}; // the default value off k × Γ
    return VectorVal{model.scalarMul(c.finite(), *a.v)};
  }
  case K::SZero:
    return ExtScalar(ScalarValue(0));
  case K::SOne:
    return ExtScalar(ScalarValue(1));
  case K::SInf:
    return ExtScalar::infinity();
  case K::SLit:
    return ExtScalar(ScalarValue::parse(t.name));
  case K::SName: {
    if (const auto it = env.find(t.name); it != env.end())
      return TermValue(asScalarVal(it->second));
    throw UnknownConstant(t.name);
  }
  case K::SNeg:
    return -asScalarVal(evalTerm(model, t.args[0], env));
  case K::SAdd:
    return asScalarVal(evalTerm(model, t.args[0], env)) +
           asScalarVal(evalTerm(model, t.args[1], env));
  case K::SMul:
    return asScalarVal(evalTerm(model, t.args[0], env)) *
           asScalarVal(evalTerm(model, t.args[1], env));
  case K::SColon: {
    const VectorVal a = asVectorVal(evalTerm(model, t.args[0], env));
    const VectorVal b = asVectorVal(evalTerm(model, t.args[1], env));
    if (!a.v || !b.v)
      return ExtScalar::infinity();
    const auto c = model.colon(*a.v, *b.v);
    return c ? ExtScalar(*c) : ExtScalar::infinity();
  }
  }
  throw FormatError("unreachable term kind");
}

bool decideQF(const CoupleModel& model, const Formula& f, const Assignment& env) {
  using K = Formula::Kind;
  switch (f.kind) {
  case K::VEq: {
    const VectorVal a = asVectorVal(evalTerm(model, f.terms[0], env));
    const VectorVal b = asVectorVal(evalTerm(model, f.terms[1], env));
    if (!a.v || !b.v)
      return !a.v && !b.v; // inf = inf
    return model.compare(*a.v, *b.v) == Ordering::EQ;
  }
  case K::VLt: {
    const VectorVal a = asVectorVal(evalTerm(model, f.terms[0], env));
    const VectorVal b = asVectorVal(evalTerm(model, f.terms[1], env));
    if (!a.v)
      return false; // nothing exceeds inf
    if (!b.v)
      return true; // γ < inf
    return model.compare(*a.v, *b.v) == Ordering::LT;
  }
  case K::PPred: {
    const VectorVal a = asVectorVal(evalTerm(model, f.terms[0], env));
    return a.v.has_value() && model.cutMember(*a.v); // P ⊆ Γ, so P(inf) is false
  }
  case K::SEq: {
    return asScalarVal(evalTerm(model, f.terms[0], env)) ==
           asScalarVal(evalTerm(model, f.terms[1], env));
  }
  case K::SLt: {
    const ExtScalar a = asScalarVal(evalTerm(model, f.terms[0], env));
    const ExtScalar b = asScalarVal(evalTerm(model, f.terms[1], env));
    return a.less(b);
  }
  case K::And:
    return decideQF(model, f.sub[0], env) && decideQF(model, f.sub[1], env);
  case K::Or:
    return decideQF(model, f.sub[0], env) || decideQF(model, f.sub[1], env);
  case K::Not:
    return !decideQF(model, f.sub[0], env);
  default:
    throw FormatError("decideQF needs a quantifier-free formula; use boundedExists for "
                      "existential search");
  }
}

namespace {

bool mentionsName(const Term& t, const std::string& name) {
  if ((t.kind == Term::Kind::VName || t.kind == Term::Kind::SName) && t.name == name)
    return true;
  return std::any_of(t.args.begin(), t.args.end(),
                     [&](const Term& a) { return mentionsName(a, name); });
}

void closedVectorSubterms(const Term& t, const std::string& openVar, std::vector<Term>& out) {
  if (!mentionsName(t, openVar) && t.sort() == Sort::Vector)
    out.push_back(t);
  for (const Term& a : t.args)
    closedVectorSubterms(a, openVar, out);
}

void gatherMatrixTerms(const Formula& f, std::vector<const Term*>& out) {
  for (const Term& t : f.terms)
    out.push_back(&t);
  for (const Formula& s : f.sub)
    gatherMatrixTerms(s, out);
}

} // namespace

ExistsResult boundedExists(const CoupleModel& model, const Formula& existsFormula,
                           std::size_t budget) {
  if (existsFormula.kind != Formula::Kind::ExistsV)
    throw FormatError("bounded search handles a single vector-sort existential");
  const std::string& var = existsFormula.var;
  const Formula& matrix = existsFormula.sub.front();
  if (!matrix.quantifierFree())
    throw FormatError("the matrix under the existential must be quantifier-free");

  std::vector<MValue> grid = model.witnessGrid(budget);

  // values of closed vector subterms of the matrix, their negations and
  // integrals: the equation-shaped targets live here
  std::vector<const Term*> terms;
  gatherMatrixTerms(matrix, terms);
  for (const Term* t : terms) {
    std::vector<Term> closed;
    closedVectorSubterms(*t, var, closed);
    for (const Term& c : closed) {
      try {
        const VectorVal v = std::get<VectorVal>(evalTerm(model, c));
        if (!v.v)
          continue;
        grid.push_back(*v.v);
        grid.push_back(model.negate(*v.v));
        if (const auto integral = model.integrate(*v.v))
          grid.push_back(*integral);
      } catch (const Error&) {
        // subterm not actually closed over this model; skip it
      }
    }
  }

  ExistsResult result;
  for (const MValue& w : grid) {
    if (result.tried >= budget)
      break;
    ++result.tried;
    Assignment env;
    env.emplace(var, VectorVal{w});
    if (decideQF(model, matrix, env)) {
      // the witness is returned only with its verifying evaluation
      result.found = true;
      result.witness = w;
      return result;
    }
  }
  return result;
}

Truth boundedDecide(const CoupleModel& model, const Formula& f, std::size_t budget) {
  if (f.quantifierFree())
    return decideQF(model, f) ? Truth::True : Truth::False;
  if (f.kind == Formula::Kind::ExistsV)
    return boundedExists(model, f, budget).found ? Truth::True : Truth::Unknown;
  if (f.kind == Formula::Kind::ForallV) {
    // forall y: φ  ==  not exists y: not φ — a found counterexample
    // refutes, anything else stays unknown
    Formula negBody;
    negBody.kind = Formula::Kind::Not;
    negBody.sub.push_back(f.sub.front());
    Formula ex;
    ex.kind = Formula::Kind::ExistsV;
    ex.var = f.var;
    ex.sub.push_back(std::move(negBody));
    return boundedExists(model, ex, budget).found ? Truth::False : Truth::Unknown;
  }
  return Truth::Unknown; // nested or scalar quantifiers: out of the search fragment
}

ScalarFormulaInfo isScalarFormula(const Formula& f) {
  ScalarFormulaInfo info;
  info.isScalar = true;

  // every atom must live in the scalar sort and quantifiers must bind
  // scalar variables (ζ is a formula of the ordered-ring language)
  std::vector<const Formula*> todo{&f};
  std::vector<const Term*> scalarAtomsTerms;
  while (!todo.empty()) {
    const Formula* g = todo.back();
    todo.pop_back();
    switch (g->kind) {
    case Formula::Kind::VEq:
    case Formula::Kind::VLt:
    case Formula::Kind::PPred:
      info.isScalar = false;
      break;
    case Formula::Kind::ExistsV:
    case Formula::Kind::ForallV:
      info.isScalar = false;
      break;
    case Formula::Kind::SEq:
    case Formula::Kind::SLt:
      for (const Term& t : g->terms)
        scalarAtomsTerms.push_back(&t);
      break;
    default:
      break;
    }
    for (const Formula& s : g->sub)
      todo.push_back(&s);
  }
  if (!info.isScalar)
    return ScalarFormulaInfo{};

  // the s_i: colon subterms are the only scalar-valued terms with
  // vector content
  std::vector<const Term*> stack(scalarAtomsTerms);
  while (!stack.empty()) {
    const Term* t = stack.back();
    stack.pop_back();
    if (t->kind == Term::Kind::SColon) {
      if (std::find(info.scalarTerms.begin(), info.scalarTerms.end(), *t) ==
          info.scalarTerms.end())
        info.scalarTerms.push_back(*t);
      continue; // vector subterms below the colon stay inside s_i
    }
    for (const Term& a : t->args)
      stack.push_back(&a);
  }
  return info;
}

} // namespace hcouple::lang
