#pragma once

#include <stdexcept>
#include <string>

namespace weil {

// Every error raised by the kernel derives from Error.  The CLI maps the
// four families (syntax, validation, size guard, everything else) onto
// distinct exit codes.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SyntaxError : Error {
  SyntaxError(int line, int col, const std::string& expected, const std::string& found)
      : Error("syntax error at " + std::to_string(line) + ":" + std::to_string(col) + ": expected " +
              expected + ", found " + found),
        line(line),
        col(col),
        expected(expected) {}
  int line;
  int col;
  std::string expected;
};

struct ValidationError : Error {
  using Error::Error;
};

// f(a_i) f(a_j) != 0 for a relation a_i a_j = 0 of the source (i == j for squares).
struct RelationViolation : ValidationError {
  RelationViolation(int i, int j, const std::string& witness)
      : ValidationError("relation violated: x" + std::to_string(i) + " x" + std::to_string(j) +
                        " = 0 but the images multiply to " + witness),
        i(i),
        j(j),
        witness(witness) {}
  int i;
  int j;
  std::string witness;
};

struct TypeMismatch : ValidationError {
  using ValidationError::ValidationError;
};

struct NotACograph : ValidationError {
  NotACograph(const std::string& p4)
      : ValidationError("not a cograph: induced path " + p4), path(p4) {}
  std::string path;
};

struct IllTyped : ValidationError {
  IllTyped(const std::string& location, const std::string& what)
      : ValidationError("ill-typed expression at " + location + ": " + what), location(location) {}
  std::string location;
};

struct RigMismatch : ValidationError {
  using ValidationError::ValidationError;
};

struct PreconditionViolation : ValidationError {
  using ValidationError::ValidationError;
};

struct ChoiceAmbiguous : ValidationError {
  ChoiceAmbiguous(const std::string& what, int resolutions)
      : ValidationError("circle factorization is not unique: " + what), resolutions(resolutions) {}
  int resolutions;
};

struct TooLarge : Error {
  using Error::Error;
};

}  // namespace weil
