#include "fracspec/errors.hpp"

namespace fracspec {

const char* errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::NonPositiveInput: return "NonPositiveInput";
    case Errc::DomainError: return "DomainError";
    case Errc::BracketFailure: return "BracketFailure";
    case Errc::QuadratureNonConvergence: return "QuadratureNonConvergence";
    case Errc::NotDecreasing: return "NotDecreasing";
    case Errc::Budget: return "Budget";
    case Errc::PoleAtOne: return "PoleAtOne";
    case Errc::InexactTail: return "InexactTail";
    case Errc::Overflow: return "Overflow";
    case Errc::InverseFailure: return "InverseFailure";
    case Errc::RegimeError: return "RegimeError";
    case Errc::InfiniteMeasure: return "InfiniteMeasure";
    case Errc::NoCrossover: return "NoCrossover";
  }
  return "UnknownError";
}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace fracspec
