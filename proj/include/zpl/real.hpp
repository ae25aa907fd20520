#pragma once

#include "zpl/rational.hpp"

#include <mpfr.h>

#include <string>
#include <string_view>

namespace zpl {

/// Owning MPFR value. Copies keep the source precision; all arithmetic goes
/// through the ball layer, which tracks rounding error explicitly.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 53);
  Real(double value, mpfr_prec_t prec);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  /// Nearest value; `exact` (when given) reports whether rounding occurred.
  static Real from_rational(const Rational& q, mpfr_prec_t prec, bool* exact = nullptr);
  static Real from_string(std::string_view text, mpfr_prec_t prec, bool* exact = nullptr);

  mpfr_ptr get() noexcept { return value_; }
  mpfr_srcptr get() const noexcept { return value_; }
  mpfr_prec_t prec() const noexcept { return mpfr_get_prec(value_); }

  bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const noexcept { return mpfr_number_p(value_) != 0; }
  int sign() const noexcept { return mpfr_sgn(value_); }

  double to_double() const noexcept { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Exact rational value (every finite MPFR number is dyadic).
  Rational to_rational() const;
  /// `%.{digits}Rg` formatting, C locale independent.
  std::string to_string(int digits = 30) const;

 private:
  mpfr_t value_;
};

}  // namespace zpl
