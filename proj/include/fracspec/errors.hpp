#pragma once

#include <stdexcept>
#include <string>

namespace fracspec {

// Failure modes of the library. Every error thrown by fracspec carries one
// of these tags so callers (and the CLI) can name the failure without
// parsing message text.
enum class Errc {
  NonPositiveInput,
  DomainError,
  BracketFailure,
  QuadratureNonConvergence,
  NotDecreasing,
  Budget,
  PoleAtOne,
  InexactTail,
  Overflow,
  InverseFailure,
  RegimeError,
  InfiniteMeasure,
  NoCrossover,
};

const char* errc_name(Errc c) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }
  const char* name() const noexcept { return errc_name(code_); }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace fracspec
