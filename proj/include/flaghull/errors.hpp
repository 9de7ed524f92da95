#pragma once

#include <stdexcept>
#include <string>

namespace flaghull {

// Every failure the library can report. CLI maps ParseError/OutOfBounds/... to exit code 2;
// AxiomViolation and NotABijection indicate a bug or a precondition the caller skipped.
enum class Errc {
  NotAPoset,
  NoUniqueBound,
  MultipleBottoms,
  MultipleTops,
  RedundantCover,
  NotComparable,
  NotAFlag,
  FlagBudgetExceeded,
  NotABijection,
  NoGallery,
  NotSemimodular,
  NotModularLattice,
  NotInHull,
  AxiomViolation,
  NotPreAntimatroid,
  OutOfBounds,
  ParseError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace flaghull
