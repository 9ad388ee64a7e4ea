#include <algorithm>
#include <cctype>
#include <sstream>

#include "hcouple/lang.hpp"

namespace hcouple::lang {

Sort Term::sort() const {
  switch (kind) {
  case Kind::VZero:
  case Kind::VOne:
  case Kind::VInf:
  case Kind::VName:
  case Kind::VNeg:
  case Kind::VAdd:
  case Kind::VPsi:
  case Kind::VSc:
    return Sort::Vector;
  default:
    return Sort::Scalar;
  }
}

bool Term::operator==(const Term& o) const {
  return kind == o.kind && name == o.name && args == o.args;
}

bool Formula::quantifierFree() const {
  switch (kind) {
  case Kind::ExistsV:
  case Kind::ExistsS:
  case Kind::ForallV:
  case Kind::ForallS:
    return false;
  default:
    break;
  }
  for (const Formula& s : sub)
    if (!s.quantifierFree())
      return false;
  return true;
}

namespace {

void collectNames(const Term& t, std::vector<std::string>& out) {
  if (t.kind == Term::Kind::VName || t.kind == Term::Kind::SName)
    out.push_back(t.name);
  for (const Term& a : t.args)
    collectNames(a, out);
}

void collectFree(const Formula& f, std::vector<std::string>& bound, std::vector<std::string>& out) {
  switch (f.kind) {
  case Formula::Kind::ExistsV:
  case Formula::Kind::ExistsS:
  case Formula::Kind::ForallV:
  case Formula::Kind::ForallS: {
    bound.push_back(f.var);
    collectFree(f.sub.front(), bound, out);
    bound.pop_back();
    return;
  }
  default:
    break;
  }
  for (const Term& t : f.terms) {
    std::vector<std::string> names;
    collectNames(t, names);
    for (auto& n : names)
      if (std::find(bound.begin(), bound.end(), n) == bound.end())
        out.push_back(n);
  }
  for (const Formula& s : f.sub)
    collectFree(s, bound, out);
}

} // namespace

std::vector<std::string> Formula::freeVars(const CoupleModel& model) const {
  std::vector<std::string> bound, names, out;
  collectFree(*this, bound, names);
  for (const auto& n : names) {
    if (model.constant(n).has_value())
      continue; // resolved as a model constant, not a variable
    if (std::find(out.begin(), out.end(), n) == out.end())
      out.push_back(n);
  }
  return out;
}

// ---------------------------------------------------------------------------
// tokenizer

namespace {

enum class Tok {
  Ident,
  Number, // digits or digits/digits
  Plus,
  Minus,
  Star,
  Colon,
  LParen,
  RParen,
  Comma,
  Eq,
  Lt,
  KwAnd,
  KwOr,
  KwNot,
  KwExists,
  KwForall,
  KwPsi,
  KwSc,
  KwInf,
  KwP,
  End
};

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++col;
      ++i;
      continue;
    }
    const int startCol = col;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
        ++j;
      if (j < text.size() && text[j] == '/' && j + 1 < text.size() &&
          std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
        ++j;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
          ++j;
      }
      out.push_back(Token{Tok::Number, text.substr(i, j - i), line, startCol});
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      const std::string word = text.substr(i, j - i);
      Tok k = Tok::Ident;
      if (word == "and")
        k = Tok::KwAnd;
      else if (word == "or")
        k = Tok::KwOr;
      else if (word == "not")
        k = Tok::KwNot;
      else if (word == "exists")
        k = Tok::KwExists;
      else if (word == "forall")
        k = Tok::KwForall;
      else if (word == "psi")
        k = Tok::KwPsi;
      else if (word == "sc")
        k = Tok::KwSc;
      else if (word == "inf")
        k = Tok::KwInf;
      else if (word == "P")
        k = Tok::KwP;
      out.push_back(Token{k, word, line, startCol});
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    Tok k;
    switch (c) {
    case '+':
      k = Tok::Plus;
      break;
    case '-':
      k = Tok::Minus;
      break;
    case '*':
      k = Tok::Star;
      break;
    case ':':
      k = Tok::Colon;
      break;
    case '(':
      k = Tok::LParen;
      break;
    case ')':
      k = Tok::RParen;
      break;
    case ',':
      k = Tok::Comma;
      break;
    case '=':
      k = Tok::Eq;
      break;
    case '<':
      k = Tok::Lt;
      break;
    default:
      throw SyntaxError(line, col, "a token (got '" + std::string(1, c) + "')");
    }
    out.push_back(Token{k, std::string(1, c), line, startCol});
    ++col;
    ++i;
  }
  out.push_back(Token{Tok::End, "", line, col});
  return out;
}

// ---------------------------------------------------------------------------
// untyped syntax tree + sort inference
//
// Literals 0, 1, inf and the operators -, +, =, < exist in both sorts;
// everything else pins sorts. Unification resolves the rest, with the
// vector sort as the default for anything left unconstrained.

struct UNode {
  enum class Op { Num, Name, Inf, Neg, Add, Mul, ColonOp, Psi, Sc } op;
  std::string text;
  std::vector<int> args;
};

struct UFormula {
  Formula::Kind kind; // comparisons enter as VEq/VLt and are refined later
  std::string var;
  std::vector<int> termRoots;
  std::vector<UFormula> sub;
};

struct SortVar {
  std::optional<Sort> sort;
  int parent; // union-find
};

class Inference {
public:
  std::vector<UNode> nodes;
  std::vector<SortVar> vars;          // one per node
  std::map<std::string, int> nameVar; // shared sort var per name
  int line = 1, col = 1;

  int addNode(UNode n) {
    nodes.push_back(std::move(n));
    vars.push_back(SortVar{std::nullopt, static_cast<int>(vars.size())});
    const int id = static_cast<int>(nodes.size()) - 1;
    applyLocalConstraints(id);
    return id;
  }

  int find(int x) {
    while (vars[x].parent != x)
      x = vars[x].parent = vars[vars[x].parent].parent;
    return x;
  }

  void setSort(int x, Sort s) {
    x = find(x);
    if (vars[x].sort && *vars[x].sort != s)
      throw SyntaxError(line, col, "consistent sorts (vector/scalar clash)");
    vars[x].sort = s;
  }

  void unify(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b)
      return;
    if (vars[a].sort && vars[b].sort && *vars[a].sort != *vars[b].sort)
      throw SyntaxError(line, col, "consistent sorts (vector/scalar clash)");
    if (!vars[a].sort)
      vars[a].sort = vars[b].sort;
    vars[b].parent = a;
  }

  void applyLocalConstraints(int id) {
    const UNode& n = nodes[id];
    switch (n.op) {
    case UNode::Op::Num:
      if (n.text != "0" && n.text != "1")
        setSort(id, Sort::Scalar); // proper rational literals are scalars
      break;
    case UNode::Op::Name: {
      auto [it, fresh] = nameVar.emplace(n.text, id);
      if (!fresh)
        unify(id, it->second);
      break;
    }
    case UNode::Op::Inf:
      break; // polymorphic
    case UNode::Op::Neg:
      unify(id, n.args[0]);
      break;
    case UNode::Op::Add:
      unify(id, n.args[0]);
      unify(id, n.args[1]);
      break;
    case UNode::Op::Mul:
      setSort(id, Sort::Scalar);
      setSort(n.args[0], Sort::Scalar);
      setSort(n.args[1], Sort::Scalar);
      break;
    case UNode::Op::ColonOp:
      setSort(id, Sort::Scalar);
      setSort(n.args[0], Sort::Vector);
      setSort(n.args[1], Sort::Vector);
      break;
    case UNode::Op::Psi:
      setSort(id, Sort::Vector);
      setSort(n.args[0], Sort::Vector);
      break;
    case UNode::Op::Sc:
      setSort(id, Sort::Vector);
      setSort(n.args[0], Sort::Scalar);
      setSort(n.args[1], Sort::Vector);
      break;
    }
  }

  Sort resolved(int id) {
    const auto s = vars[find(id)].sort;
    return s.value_or(Sort::Vector); // default sort
  }
};

// ---------------------------------------------------------------------------
// parser

class Parser {
public:
  explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

  Formula parseFormulaAll() {
    UFormula f = parseQuant();
    expect(Tok::End, "end of input");
    return typeFormula(f);
  }

  Term parseTermAll() {
    const int id = parseSum();
    expect(Tok::End, "end of input");
    return typeTerm(id);
  }

private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Inference inf_;

  const Token& cur() const { return toks_[pos_]; }

  bool accept(Tok k) {
    if (cur().kind == k) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(Tok k, const std::string& what) {
    if (!accept(k))
      throw SyntaxError(cur().line, cur().col, what);
  }

  void notePos() {
    inf_.line = cur().line;
    inf_.col = cur().col;
  }

  // --- formulas ---

  UFormula parseQuant() {
    if (cur().kind == Tok::KwExists || cur().kind == Tok::KwForall) {
      const bool exists = cur().kind == Tok::KwExists;
      ++pos_;
      if (cur().kind != Tok::Ident)
        throw SyntaxError(cur().line, cur().col, "a variable after the quantifier");
      const std::string var = cur().text;
      ++pos_;
      expect(Tok::Colon, "':' after the quantified variable");
      UFormula body = parseQuant();
      UFormula f;
      // the V kinds are placeholders; the variable's inferred sort decides
      f.kind = exists ? Formula::Kind::ExistsV : Formula::Kind::ForallV;
      f.var = var;
      f.sub.push_back(std::move(body));
      return f;
    }
    return parseOr();
  }

  UFormula parseOr() {
    UFormula f = parseAnd();
    while (cur().kind == Tok::KwOr) {
      ++pos_;
      UFormula rhs = parseAnd();
      UFormula o;
      o.kind = Formula::Kind::Or;
      o.sub.push_back(std::move(f));
      o.sub.push_back(std::move(rhs));
      f = std::move(o);
    }
    return f;
  }

  UFormula parseAnd() {
    UFormula f = parseUnary();
    while (cur().kind == Tok::KwAnd) {
      ++pos_;
      UFormula rhs = parseUnary();
      UFormula a;
      a.kind = Formula::Kind::And;
      a.sub.push_back(std::move(f));
      a.sub.push_back(std::move(rhs));
      f = std::move(a);
    }
    return f;
  }

  // scan to the matching ')' looking for formula-level tokens; a
  // parenthesized term never contains them
  bool parenHoldsFormula() const {
    int depth = 0;
    for (std::size_t i = pos_; i < toks_.size(); ++i) {
      switch (toks_[i].kind) {
      case Tok::LParen:
        ++depth;
        break;
      case Tok::RParen:
        if (--depth == 0)
          return false;
        break;
      case Tok::KwAnd:
      case Tok::KwOr:
      case Tok::KwNot:
      case Tok::KwExists:
      case Tok::KwForall:
      case Tok::Eq:
      case Tok::Lt:
      case Tok::KwP:
        return true;
      case Tok::End:
        return false;
      default:
        break;
      }
    }
    return false;
  }

  UFormula parseUnary() {
    if (cur().kind == Tok::KwNot) {
      ++pos_;
      UFormula n;
      n.kind = Formula::Kind::Not;
      n.sub.push_back(parseUnary());
      return n;
    }
    if (cur().kind == Tok::LParen && parenHoldsFormula()) {
      ++pos_;
      UFormula f = parseQuant();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (cur().kind == Tok::KwP) {
      ++pos_;
      expect(Tok::LParen, "'(' after P");
      const int t = parseSum();
      expect(Tok::RParen, "')'");
      notePos();
      inf_.setSort(t, Sort::Vector);
      UFormula f;
      f.kind = Formula::Kind::PPred;
      f.termRoots.push_back(t);
      return f;
    }
    const int lhs = parseSum();
    Formula::Kind k;
    if (accept(Tok::Eq))
      k = Formula::Kind::VEq;
    else if (accept(Tok::Lt))
      k = Formula::Kind::VLt;
    else
      throw SyntaxError(cur().line, cur().col, "'=', '<' or a predicate");
    const int rhs = parseSum();
    notePos();
    inf_.unify(lhs, rhs);
    UFormula f;
    f.kind = k;
    f.termRoots.push_back(lhs);
    f.termRoots.push_back(rhs);
    return f;
  }

  // --- terms ---

  int parseSum() {
    int t = parseProduct();
    for (;;) {
      if (accept(Tok::Plus)) {
        const int rhs = parseProduct();
        notePos();
        t = inf_.addNode(UNode{UNode::Op::Add, "", {t, rhs}});
      } else if (cur().kind == Tok::Minus) {
        // binary minus sugar: a - b = a + (-b)
        ++pos_;
        const int rhs = parseProduct();
        notePos();
        const int neg = inf_.addNode(UNode{UNode::Op::Neg, "", {rhs}});
        t = inf_.addNode(UNode{UNode::Op::Add, "", {t, neg}});
      } else {
        return t;
      }
    }
  }

  int parseProduct() {
    int t = parseFactor();
    for (;;) {
      if (accept(Tok::Star)) {
        const int rhs = parseFactor();
        notePos();
        t = inf_.addNode(UNode{UNode::Op::Mul, "", {t, rhs}});
      } else if (cur().kind == Tok::Colon) {
        ++pos_;
        const int rhs = parseFactor();
        notePos();
        t = inf_.addNode(UNode{UNode::Op::ColonOp, "", {t, rhs}});
      } else {
        return t;
      }
    }
  }

  int parseFactor() {
    notePos();
    if (accept(Tok::Minus))
      return inf_.addNode(UNode{UNode::Op::Neg, "", {parseFactor()}});
    if (cur().kind == Tok::Number) {
      const std::string text = cur().text;
      ++pos_;
      return inf_.addNode(UNode{UNode::Op::Num, text, {}});
    }
    if (cur().kind == Tok::KwInf) {
      ++pos_;
      return inf_.addNode(UNode{UNode::Op::Inf, "", {}});
    }
    if (cur().kind == Tok::KwPsi) {
      ++pos_;
      expect(Tok::LParen, "'(' after psi");
      const int a = parseSum();
      expect(Tok::RParen, "')'");
      return inf_.addNode(UNode{UNode::Op::Psi, "", {a}});
    }
    if (cur().kind == Tok::KwSc) {
      ++pos_;
      expect(Tok::LParen, "'(' after sc");
      const int c = parseSum();
      expect(Tok::Comma, "',' between the sc arguments");
      const int v = parseSum();
      expect(Tok::RParen, "')'");
      return inf_.addNode(UNode{UNode::Op::Sc, "", {c, v}});
    }
    if (cur().kind == Tok::Ident) {
      const std::string name = cur().text;
      ++pos_;
      return inf_.addNode(UNode{UNode::Op::Name, name, {}});
    }
    if (accept(Tok::LParen)) {
      const int t = parseSum();
      expect(Tok::RParen, "')'");
      return t;
    }
    throw SyntaxError(cur().line, cur().col, "a term");
  }

  // --- typing ---

  Term typeTerm(int id) {
    const UNode& n = inf_.nodes[id];
    const Sort s = inf_.resolved(id);
    switch (n.op) {
    case UNode::Op::Num:
      if (n.text == "0")
        return Term{s == Sort::Vector ? Term::Kind::VZero : Term::Kind::SZero, "", {}};
      if (n.text == "1")
        return Term{s == Sort::Vector ? Term::Kind::VOne : Term::Kind::SOne, "", {}};
      return Term{Term::Kind::SLit, n.text, {}};
    case UNode::Op::Name:
      return Term{s == Sort::Vector ? Term::Kind::VName : Term::Kind::SName, n.text, {}};
    case UNode::Op::Inf:
      return Term{s == Sort::Vector ? Term::Kind::VInf : Term::Kind::SInf, "", {}};
    case UNode::Op::Neg:
      return Term{s == Sort::Vector ? Term::Kind::VNeg : Term::Kind::SNeg,
                  "",
                  {typeTerm(n.args[0])}};
    case UNode::Op::Add:
      return Term{s == Sort::Vector ? Term::Kind::VAdd : Term::Kind::SAdd,
                  "",
                  {typeTerm(n.args[0]), typeTerm(n.args[1])}};
    case UNode::Op::Mul:
      return Term{Term::Kind::SMul, "", {typeTerm(n.args[0]), typeTerm(n.args[1])}};
    case UNode::Op::ColonOp:
      return Term{Term::Kind::SColon, "", {typeTerm(n.args[0]), typeTerm(n.args[1])}};
    case UNode::Op::Psi:
      return Term{Term::Kind::VPsi, "", {typeTerm(n.args[0])}};
    case UNode::Op::Sc:
      return Term{Term::Kind::VSc, "", {typeTerm(n.args[0]), typeTerm(n.args[1])}};
    }
    throw SyntaxError(1, 1, "a well-formed term");
  }

  Formula typeFormula(const UFormula& f) {
    Formula out;
    out.kind = f.kind;
    out.var = f.var;
    switch (f.kind) {
    case Formula::Kind::VEq:
    case Formula::Kind::VLt: {
      const Sort s = inf_.resolved(f.termRoots[0]);
      if (f.kind == Formula::Kind::VEq)
        out.kind = s == Sort::Vector ? Formula::Kind::VEq : Formula::Kind::SEq;
      else
        out.kind = s == Sort::Vector ? Formula::Kind::VLt : Formula::Kind::SLt;
      out.terms.push_back(typeTerm(f.termRoots[0]));
      out.terms.push_back(typeTerm(f.termRoots[1]));
      return out;
    }
    case Formula::Kind::PPred:
      out.terms.push_back(typeTerm(f.termRoots[0]));
      return out;
    case Formula::Kind::ExistsV:
    case Formula::Kind::ForallV: {
      Sort s = Sort::Vector;
      const auto it = inf_.nameVar.find(f.var);
      if (it != inf_.nameVar.end())
        s = inf_.resolved(it->second);
      const bool exists = f.kind == Formula::Kind::ExistsV;
      if (s == Sort::Vector)
        out.kind = exists ? Formula::Kind::ExistsV : Formula::Kind::ForallV;
      else
        out.kind = exists ? Formula::Kind::ExistsS : Formula::Kind::ForallS;
      out.sub.push_back(typeFormula(f.sub.front()));
      return out;
    }
    default:
      for (const UFormula& s : f.sub)
        out.sub.push_back(typeFormula(s));
      return out;
    }
  }
};

// ---------------------------------------------------------------------------
// printer

int precedence(Term::Kind k) {
  switch (k) {
  case Term::Kind::VAdd:
  case Term::Kind::SAdd:
    return 1;
  case Term::Kind::SMul:
  case Term::Kind::SColon:
    return 2;
  default:
    return 3;
  }
}

void printTerm(std::ostream& os, const Term& t, int parentPrec) {
  const int prec = precedence(t.kind);
  const bool parens = prec < parentPrec;
  if (parens)
    os << "(";
  switch (t.kind) {
  case Term::Kind::VZero:
  case Term::Kind::SZero:
    os << "0";
    break;
  case Term::Kind::VOne:
  case Term::Kind::SOne:
    os << "1";
    break;
  case Term::Kind::VInf:
  case Term::Kind::SInf:
    os << "inf";
    break;
  case Term::Kind::VName:
  case Term::Kind::SName:
  case Term::Kind::SLit:
    os << t.name;
    break;
  case Term::Kind::VNeg:
  case Term::Kind::SNeg:
    os << "-";
    printTerm(os, t.args[0], 3);
    break;
  case Term::Kind::VAdd:
  case Term::Kind::SAdd:
    printTerm(os, t.args[0], 1);
    os << " + ";
    printTerm(os, t.args[1], 2);
    break;
  case Term::Kind::SMul:
    printTerm(os, t.args[0], 2);
    os << " * ";
    printTerm(os, t.args[1], 3);
    break;
  case Term::Kind::SColon:
    printTerm(os, t.args[0], 3);
    os << " : ";
    printTerm(os, t.args[1], 3);
    break;
  case Term::Kind::VPsi:
    os << "psi(";
    printTerm(os, t.args[0], 0);
    os << ")";
    break;
  case Term::Kind::VSc:
    os << "sc(";
    printTerm(os, t.args[0], 0);
    os << ", ";
    printTerm(os, t.args[1], 0);
    os << ")";
    break;
  }
  if (parens)
    os << ")";
}

int fprecedence(Formula::Kind k) {
  switch (k) {
  case Formula::Kind::ExistsV:
  case Formula::Kind::ExistsS:
  case Formula::Kind::ForallV:
  case Formula::Kind::ForallS:
    return 0;
  case Formula::Kind::Or:
    return 1;
  case Formula::Kind::And:
    return 2;
  case Formula::Kind::Not:
    return 3;
  default:
    return 4;
  }
}

void printFormula(std::ostream& os, const Formula& f, int parentPrec) {
  const int prec = fprecedence(f.kind);
  const bool parens = prec < parentPrec;
  if (parens)
    os << "(";
  switch (f.kind) {
  case Formula::Kind::VEq:
  case Formula::Kind::SEq:
    printTerm(os, f.terms[0], 0);
    os << " = ";
    printTerm(os, f.terms[1], 0);
    break;
  case Formula::Kind::VLt:
  case Formula::Kind::SLt:
    printTerm(os, f.terms[0], 0);
    os << " < ";
    printTerm(os, f.terms[1], 0);
    break;
  case Formula::Kind::PPred:
    os << "P(";
    printTerm(os, f.terms[0], 0);
    os << ")";
    break;
  case Formula::Kind::And:
    printFormula(os, f.sub[0], 2);
    os << " and ";
    printFormula(os, f.sub[1], 3);
    break;
  case Formula::Kind::Or:
    printFormula(os, f.sub[0], 1);
    os << " or ";
    printFormula(os, f.sub[1], 2);
    break;
  case Formula::Kind::Not:
    os << "not ";
    printFormula(os, f.sub[0], 4);
    break;
  case Formula::Kind::ExistsV:
  case Formula::Kind::ExistsS:
    os << "exists " << f.var << ": ";
    printFormula(os, f.sub[0], 0);
    break;
  case Formula::Kind::ForallV:
  case Formula::Kind::ForallS:
    os << "forall " << f.var << ": ";
    printFormula(os, f.sub[0], 0);
    break;
  }
  if (parens)
    os << ")";
}

} // namespace

Formula parseFormula(const std::string& text) { return Parser(text).parseFormulaAll(); }

Term parseTerm(const std::string& text) { return Parser(text).parseTermAll(); }

std::string print(const Formula& f) {
  std::ostringstream os;
  printFormula(os, f, 0);
  return os.str();
}

std::string print(const Term& t) {
  std::ostringstream os;
  printTerm(os, t, 0);
  return os.str();
}

} // namespace hcouple::lang
