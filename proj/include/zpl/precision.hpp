#pragma once

#include "zpl/errors.hpp"

namespace zpl {

/// Working mantissa precision plus the ceiling that escalation may not cross.
struct Precision {
  int bits = 192;
  int max_bits = 4096;
};

/// Doubles the working precision. Throws PrecisionCeiling when the doubled
/// value would exceed `max_bits`.
inline Precision escalate(Precision prec)
{
  if (prec.bits <= 0 || prec.bits > prec.max_bits / 2) {
    throw Error(ErrorCode::PrecisionCeiling,
                "cannot double " + std::to_string(prec.bits) + " bits (ceiling " +
                    std::to_string(prec.max_bits) + ")");
  }
  return Precision{prec.bits * 2, prec.max_bits};
}

}  // namespace zpl
