#pragma once

#include "zpl/precision.hpp"
#include "zpl/real.hpp"

#include <string>

namespace zpl {

/// Error radii are kept in extended precision; every radius computation is
/// rounded upward so that it stays a bound. The 15-bit exponent covers
/// radii far below 2^-4096.
using Radius = long double;

/// Real ball mid ± rad: the true value lies in [mid - rad, mid + rad].
struct RealBall {
  Real mid;
  Radius rad = 0;

  explicit RealBall(mpfr_prec_t prec = 53) : mid(prec) {}
  RealBall(Real m, Radius r) : mid(std::move(m)), rad(r) {}

  static RealBall from_integer(long n, mpfr_prec_t prec);
  static RealBall from_rational(const Rational& q, mpfr_prec_t prec);
  static RealBall from_double(double x, mpfr_prec_t prec);
  static RealBall from_string(std::string_view text, mpfr_prec_t prec);

  mpfr_prec_t prec() const { return mid.prec(); }
  Radius mag_upper() const;
  Radius mag_lower() const;
  bool contains_zero() const;
  bool contains(const Real& x) const;
  bool overlaps(const RealBall& other) const;
  /// Lower/upper endpoints as doubles rounded outward.
  double lower() const;
  double upper() const;
  double to_double() const { return mid.to_double(); }
};

/// Complex ball (disk) with midpoint re + i·im and radius rad.
struct CertifiedComplex {
  Real re;
  Real im;
  Radius rad = 0;

  explicit CertifiedComplex(mpfr_prec_t prec = 53) : re(prec), im(prec) {}
  CertifiedComplex(Real r, Real i, Radius radius) : re(std::move(r)), im(std::move(i)), rad(radius) {}
  explicit CertifiedComplex(const RealBall& x);

  static CertifiedComplex from_rationals(const Rational& re, const Rational& im, mpfr_prec_t prec);
  static CertifiedComplex from_doubles(double re, double im, mpfr_prec_t prec);

  mpfr_prec_t prec() const { return re.prec(); }
  Radius mid_mag_upper() const;
  Radius mid_mag_lower() const;
  Radius mag_upper() const;
  Radius mag_lower() const;
  bool contains_zero() const;
  bool contains(const Real& x, const Real& y) const;
  bool overlaps(const CertifiedComplex& other) const;
  RealBall real() const;
  RealBall imag() const;
  CertifiedComplex conj() const;
  double re_double() const { return re.to_double(); }
  double im_double() const { return im.to_double(); }
};

// Rounding helpers shared by the ball layer.
Radius ulp(const Real& x);
Radius mag_up(const Real& x);
Radius mag_down(const Real& x);
Radius round_up(Radius r);

RealBall operator+(const RealBall& a, const RealBall& b);
RealBall operator-(const RealBall& a, const RealBall& b);
RealBall operator*(const RealBall& a, const RealBall& b);
RealBall operator/(const RealBall& a, const RealBall& b);
RealBall operator-(const RealBall& a);
RealBall operator*(const RealBall& a, long n);

RealBall exp(const RealBall& x);
RealBall log(const RealBall& x);
RealBall sqrt(const RealBall& x);
RealBall atan(const RealBall& x);
RealBall sin(const RealBall& x);
RealBall cos(const RealBall& x);
RealBall abs(const RealBall& x);
RealBall pi_ball(mpfr_prec_t prec);
RealBall log2_ball(mpfr_prec_t prec);

CertifiedComplex operator+(const CertifiedComplex& a, const CertifiedComplex& b);
CertifiedComplex operator-(const CertifiedComplex& a, const CertifiedComplex& b);
CertifiedComplex operator*(const CertifiedComplex& a, const CertifiedComplex& b);
CertifiedComplex operator/(const CertifiedComplex& a, const CertifiedComplex& b);
CertifiedComplex operator-(const CertifiedComplex& a);
CertifiedComplex operator*(const CertifiedComplex& a, const RealBall& b);
CertifiedComplex operator*(const RealBall& b, const CertifiedComplex& a);
CertifiedComplex operator*(const CertifiedComplex& a, long n);
CertifiedComplex operator+(const CertifiedComplex& a, const RealBall& b);

CertifiedComplex inv(const CertifiedComplex& z);
CertifiedComplex exp(const CertifiedComplex& z);
/// Principal logarithm; the disk must not meet (-inf, 0].
CertifiedComplex log(const CertifiedComplex& z);
/// Principal argument. When the disk meets the negative real axis the
/// result is the trivial enclosure [-4, 4].
RealBall arg(const CertifiedComplex& z);
RealBall abs(const CertifiedComplex& z);

/// Re-rounds to `bits`, folding the rounding error into the radius.
RealBall with_precision(const RealBall& x, mpfr_prec_t bits);
CertifiedComplex with_precision(const CertifiedComplex& z, mpfr_prec_t bits);

enum class ArithOp { add, sub, mul, div };

/// Certified binary operation at the requested working precision.
CertifiedComplex certified_arith(ArithOp op, const CertifiedComplex& a, const CertifiedComplex& b,
                                 Precision prec);

std::string to_string(const RealBall& x, int digits = 20);
std::string to_string(const CertifiedComplex& z, int digits = 20);

}  // namespace zpl
