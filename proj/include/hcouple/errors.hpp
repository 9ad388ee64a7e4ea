#ifndef HCOUPLE_ERRORS_HPP
#define HCOUPLE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hcouple {

/// Base class for all domain errors. The CLI maps these to exit code 1;
/// anything else escaping is a bug.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

private:
  std::string code_;
};

struct UnknownBasisId : Error {
  explicit UnknownBasisId(const std::string& id)
      : Error("UnknownBasisId", "basis id '" + id + "' not declared in context") {}
};

struct UnsupportedFieldPair : Error {
  explicit UnsupportedFieldPair(const std::string& what) : Error("UnsupportedFieldPair", what) {}
};

struct TrivialCouple : Error {
  explicit TrivialCouple(const std::string& what) : Error("TrivialCouple", what) {}
};

struct NoGap : Error {
  explicit NoGap(const std::string& what) : Error("NoGap", what) {}
};

struct HypothesisViolation : Error {
  explicit HypothesisViolation(const std::string& what) : Error("HypothesisViolation", what) {}
};

struct NotInCut : Error {
  explicit NotInCut(const std::string& what) : Error("NotInCut", what) {}
};

struct AlreadyPsiValue : Error {
  explicit AlreadyPsiValue(const std::string& what) : Error("AlreadyPsiValue", what) {}
};

/// Raised when a runtime assertion that the theory guarantees fails.
/// Never caught internally: a throw here means a real bug or an
/// unvalidated presentation, and must surface to the caller.
struct InternalInvariantViolation : Error {
  explicit InternalInvariantViolation(const std::string& what)
      : Error("InternalInvariantViolation", what) {}
};

struct IntegrationGap : Error {
  explicit IntegrationGap(const std::string& what) : Error("IntegrationGap", what) {}
};

struct HeightExceeded : Error {
  explicit HeightExceeded(const std::string& what) : Error("HeightExceeded", what) {}
};

struct ZeroDagger : Error {
  explicit ZeroDagger(const std::string& what) : Error("ZeroDagger", what) {}
};

struct BetaInSpan : Error {
  explicit BetaInSpan(const std::string& what) : Error("BetaInSpan", what) {}
};

struct InvalidSubcouple : Error {
  explicit InvalidSubcouple(const std::string& what) : Error("InvalidSubcouple", what) {}
};

struct NoSmallerClassAvailable : Error {
  explicit NoSmallerClassAvailable(const std::string& what)
      : Error("NoSmallerClassAvailable", what) {}
};

struct NotConverged : Error {
  explicit NotConverged(const std::string& what) : Error("NotConverged", what) {}
};

struct UnknownConstant : Error {
  explicit UnknownConstant(const std::string& name)
      : Error("UnknownConstant", "no constant named '" + name + "' in this model") {}
};

struct FormatError : Error {
  explicit FormatError(const std::string& what) : Error("FormatError", what) {}
};

class SyntaxError : public Error {
public:
  SyntaxError(int line, int col, const std::string& expected)
      : Error("SyntaxError",
              "line " + std::to_string(line) + ", col " + std::to_string(col) + ": expected " +
                  expected),
        line_(line), col_(col), expected_(expected) {}

  int line() const { return line_; }
  int col() const { return col_; }
  const std::string& expected() const { return expected_; }

private:
  int line_, col_;
  std::string expected_;
};

} // namespace hcouple

#endif
