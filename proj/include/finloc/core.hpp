#ifndef FINLOC_CORE_HPP
#define FINLOC_CORE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace finloc {

/// Index of a lattice element, a point, or an atom. Always dense, 0-based.
using ElemId = int;

/// Subset of a carrier with at most 64 points, one bit per point.
using Mask = std::uint64_t;

inline int popcount(Mask m) { return __builtin_popcountll(m); }

inline Mask full_mask(int n) { return n >= 64 ? ~Mask{0} : ((Mask{1} << n) - 1); }

inline bool mask_test(Mask m, int i) { return (m >> i) & 1u; }

/// Lowest set bit position; -1 on the empty mask.
inline int mask_min(Mask m) { return m == 0 ? -1 : __builtin_ctzll(m); }

/// Iterate submasks of m (excluding m itself when proper=true).
/// Usage: for (Mask s = m;; s = (s - 1) & m) { ...; if (s == 0) break; }
inline std::vector<Mask> submasks(Mask m) {
  std::vector<Mask> out;
  Mask s = m;
  for (;;) {
    out.push_back(s);
    if (s == 0) break;
    s = (s - 1) & m;
  }
  return out;
}

enum class Errc {
  NotLattice,
  NotDistributive,
  NotBoolean,
  NotReal,
  NotNormal,
  NoAdjoint,
  NotSigmaAlgebra,
  NotSigmaIdeal,
  NotComplete,
  PreimageNotMeasurable,
  PreimageNotNegligible,
  DomainNotConegligible,
  NotMeasurable,
  NotAMeasure,
  NotFinite,
  AlgebraMismatch,
  CarrierMismatch,
  BoundExceeded,
  ParseError,
  ValidationError,
  UnknownCommand,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotLattice: return "NotLattice";
    case Errc::NotDistributive: return "NotDistributive";
    case Errc::NotBoolean: return "NotBoolean";
    case Errc::NotReal: return "NotReal";
    case Errc::NotNormal: return "NotNormal";
    case Errc::NoAdjoint: return "NoAdjoint";
    case Errc::NotSigmaAlgebra: return "NotSigmaAlgebra";
    case Errc::NotSigmaIdeal: return "NotSigmaIdeal";
    case Errc::NotComplete: return "NotComplete";
    case Errc::PreimageNotMeasurable: return "PreimageNotMeasurable";
    case Errc::PreimageNotNegligible: return "PreimageNotNegligible";
    case Errc::DomainNotConegligible: return "DomainNotConegligible";
    case Errc::NotMeasurable: return "NotMeasurable";
    case Errc::NotAMeasure: return "NotAMeasure";
    case Errc::NotFinite: return "NotFinite";
    case Errc::AlgebraMismatch: return "AlgebraMismatch";
    case Errc::CarrierMismatch: return "CarrierMismatch";
    case Errc::BoundExceeded: return "BoundExceeded";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
    case Errc::UnknownCommand: return "UnknownCommand";
  }
  return "Error";
}

/**
 * Typed error with a machine-readable code and an optional witness string
 * naming the element or set where the violated condition was observed.
 */
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::string witness = {})
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code),
        witness_(std::move(witness)) {}

  Errc code() const { return code_; }
  const std::string& witness() const { return witness_; }

 private:
  Errc code_;
  std::string witness_;
};

}  // namespace finloc

#endif  // FINLOC_CORE_HPP
