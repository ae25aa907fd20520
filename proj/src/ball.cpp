#include "zpl/ball.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace zpl {

namespace {

constexpr Radius kUp = 1.0L + 0x1p-56L;
constexpr Radius kDown = 1.0L - 0x1p-56L;
// libm transcendental results are trusted to a few ulps only
constexpr Radius kLibmUp = 1.0L + 0x1p-50L;

Radius eps(mpfr_prec_t p) { return std::ldexp(1.0L, -static_cast<int>(p)); }

mpfr_prec_t max_prec(const Real& a, const Real& b) { return std::max(a.prec(), b.prec()); }

void check_finite(const Real& x, const char* what)
{
  if (!x.is_finite()) throw Error(ErrorCode::Overflow, std::string("non-finite result in ") + what);
}

void check_radius(Radius r, const char* what)
{
  if (!std::isfinite(r)) throw Error(ErrorCode::Overflow, std::string("radius overflow in ") + what);
}

RealBall finish(RealBall r, const char* what)
{
  check_finite(r.mid, what);
  r.rad = round_up(r.rad);
  check_radius(r.rad, what);
  return r;
}

CertifiedComplex finish(CertifiedComplex z, const char* what)
{
  check_finite(z.re, what);
  check_finite(z.im, what);
  z.rad = round_up(z.rad);
  check_radius(z.rad, what);
  return z;
}

// |a - b| rounded up, for containment tests.
Radius distance_up(const Real& a, const Real& b)
{
  Real d(std::max(a.prec(), b.prec()) + 8);
  mpfr_sub(d.get(), a.get(), b.get(), MPFR_RNDA);
  return mag_up(d);
}

}  // namespace

Radius ulp(const Real& x)
{
  if (x.is_zero() || !x.is_finite()) return 0;
  return std::ldexp(1.0L, static_cast<int>(mpfr_get_exp(x.get()) - x.prec()));
}

Radius mag_up(const Real& x) { return std::fabs(mpfr_get_ld(x.get(), MPFR_RNDA)); }

Radius mag_down(const Real& x) { return std::fabs(mpfr_get_ld(x.get(), MPFR_RNDZ)); }

Radius round_up(Radius r) { return r * kUp; }

// ---------------------------------------------------------------- RealBall

RealBall RealBall::from_integer(long n, mpfr_prec_t prec)
{
  RealBall r(prec);
  int t = mpfr_set_si(r.mid.get(), n, MPFR_RNDN);
  if (t != 0) r.rad = round_up(ulp(r.mid));
  return r;
}

RealBall RealBall::from_rational(const Rational& q, mpfr_prec_t prec)
{
  bool exact = false;
  RealBall r(Real::from_rational(q, prec, &exact), 0);
  if (!exact) r.rad = round_up(ulp(r.mid));
  return r;
}

RealBall RealBall::from_double(double x, mpfr_prec_t prec)
{
  RealBall r(prec);
  int t = mpfr_set_d(r.mid.get(), x, MPFR_RNDN);
  if (t != 0) r.rad = round_up(ulp(r.mid));
  return r;
}

RealBall RealBall::from_string(std::string_view text, mpfr_prec_t prec)
{
  bool exact = false;
  RealBall r(Real::from_string(text, prec, &exact), 0);
  if (!exact) r.rad = round_up(ulp(r.mid));
  return r;
}

Radius RealBall::mag_upper() const { return round_up(mag_up(mid) + rad); }

Radius RealBall::mag_lower() const
{
  Radius m = mag_down(mid) * kDown - rad;
  return m > 0 ? m : 0;
}

bool RealBall::contains_zero() const { return mag_down(mid) * kDown <= rad; }

bool RealBall::contains(const Real& x) const { return distance_up(x, mid) <= rad; }

bool RealBall::overlaps(const RealBall& other) const
{
  return distance_up(mid, other.mid) <= round_up(rad + other.rad);
}

double RealBall::lower() const
{
  Real t(mid);
  return static_cast<double>(mpfr_get_ld(t.get(), MPFR_RNDD) - rad * kUp);
}

double RealBall::upper() const
{
  Real t(mid);
  return static_cast<double>(mpfr_get_ld(t.get(), MPFR_RNDU) + rad * kUp);
}

RealBall operator+(const RealBall& a, const RealBall& b)
{
  RealBall r(max_prec(a.mid, b.mid));
  mpfr_add(r.mid.get(), a.mid.get(), b.mid.get(), MPFR_RNDN);
  r.rad = a.rad + b.rad + ulp(r.mid);
  return finish(std::move(r), "add");
}

RealBall operator-(const RealBall& a, const RealBall& b)
{
  RealBall r(max_prec(a.mid, b.mid));
  mpfr_sub(r.mid.get(), a.mid.get(), b.mid.get(), MPFR_RNDN);
  r.rad = a.rad + b.rad + ulp(r.mid);
  return finish(std::move(r), "sub");
}

RealBall operator*(const RealBall& a, const RealBall& b)
{
  RealBall r(max_prec(a.mid, b.mid));
  mpfr_mul(r.mid.get(), a.mid.get(), b.mid.get(), MPFR_RNDN);
  r.rad = mag_up(a.mid) * b.rad + mag_up(b.mid) * a.rad + a.rad * b.rad + ulp(r.mid);
  return finish(std::move(r), "mul");
}

RealBall operator/(const RealBall& a, const RealBall& b)
{
  const Radius blow = mag_down(b.mid) * kDown;
  if (blow <= b.rad) throw Error(ErrorCode::DivisionByEnclosedZero, "real division by a ball containing 0");
  RealBall r(max_prec(a.mid, b.mid));
  mpfr_div(r.mid.get(), a.mid.get(), b.mid.get(), MPFR_RNDN);
  const Radius q = mag_up(r.mid) * kUp;
  r.rad = (a.rad + q * b.rad) / ((blow - b.rad) * kDown) + ulp(r.mid);
  return finish(std::move(r), "div");
}

RealBall operator-(const RealBall& a)
{
  RealBall r(a);
  mpfr_neg(r.mid.get(), r.mid.get(), MPFR_RNDN);
  return r;
}

RealBall operator*(const RealBall& a, long n)
{
  RealBall r(a.prec());
  mpfr_mul_si(r.mid.get(), a.mid.get(), n, MPFR_RNDN);
  r.rad = a.rad * static_cast<Radius>(std::labs(n)) + ulp(r.mid);
  return finish(std::move(r), "mul_si");
}

RealBall exp(const RealBall& x)
{
  RealBall r(x.prec());
  mpfr_exp(r.mid.get(), x.mid.get(), MPFR_RNDN);
  const Radius m = mag_up(r.mid) * kUp;
  r.rad = m * std::expm1(x.rad) * kLibmUp + ulp(r.mid);
  return finish(std::move(r), "exp");
}

RealBall log(const RealBall& x)
{
  if (x.mid.sign() <= 0 || mag_down(x.mid) * kDown <= x.rad) {
    throw Error(ErrorCode::PreconditionViolation, "log of a ball reaching nonpositive values");
  }
  RealBall r(x.prec());
  mpfr_log(r.mid.get(), x.mid.get(), MPFR_RNDN);
  const Radius lo = mag_down(x.mid) * kDown - x.rad;
  r.rad = x.rad / (lo * kDown) + ulp(r.mid);
  return finish(std::move(r), "log");
}

RealBall sqrt(const RealBall& x)
{
  if (x.mid.sign() < 0 && !x.contains_zero()) {
    throw Error(ErrorCode::PreconditionViolation, "sqrt of a negative ball");
  }
  RealBall r(x.prec());
  if (x.mid.sign() < 0) {
    mpfr_set_zero(r.mid.get(), 1);
    r.rad = std::sqrt(x.rad) * kLibmUp;
    return finish(std::move(r), "sqrt");
  }
  mpfr_sqrt(r.mid.get(), x.mid.get(), MPFR_RNDN);
  const Radius lo = mag_down(x.mid) * kDown - x.rad;
  if (lo > 0) {
    r.rad = x.rad / (std::sqrt(lo) * kDown) + ulp(r.mid);
  } else {
    r.rad = std::sqrt(mag_up(x.mid) + x.rad) * kLibmUp + ulp(r.mid);
  }
  return finish(std::move(r), "sqrt");
}

RealBall atan(const RealBall& x)
{
  RealBall r(x.prec());
  mpfr_atan(r.mid.get(), x.mid.get(), MPFR_RNDN);
  r.rad = x.rad + ulp(r.mid);
  return finish(std::move(r), "atan");
}

RealBall sin(const RealBall& x)
{
  RealBall r(x.prec());
  mpfr_sin(r.mid.get(), x.mid.get(), MPFR_RNDN);
  r.rad = x.rad + ulp(r.mid);
  return finish(std::move(r), "sin");
}

RealBall cos(const RealBall& x)
{
  RealBall r(x.prec());
  mpfr_cos(r.mid.get(), x.mid.get(), MPFR_RNDN);
  r.rad = x.rad + ulp(r.mid);
  return finish(std::move(r), "cos");
}

RealBall abs(const RealBall& x)
{
  RealBall r(x);
  mpfr_abs(r.mid.get(), r.mid.get(), MPFR_RNDN);
  return r;
}

RealBall pi_ball(mpfr_prec_t prec)
{
  RealBall r(prec);
  mpfr_const_pi(r.mid.get(), MPFR_RNDN);
  r.rad = round_up(ulp(r.mid));
  return r;
}

RealBall log2_ball(mpfr_prec_t prec)
{
  RealBall r(prec);
  mpfr_const_log2(r.mid.get(), MPFR_RNDN);
  r.rad = round_up(ulp(r.mid));
  return r;
}

// -------------------------------------------------------- CertifiedComplex

CertifiedComplex::CertifiedComplex(const RealBall& x) : re(x.mid), im(x.prec()), rad(x.rad) {}

CertifiedComplex CertifiedComplex::from_rationals(const Rational& r, const Rational& i, mpfr_prec_t prec)
{
  bool exact_re = false;
  bool exact_im = false;
  CertifiedComplex z(Real::from_rational(r, prec, &exact_re), Real::from_rational(i, prec, &exact_im), 0);
  if (!exact_re) z.rad += ulp(z.re);
  if (!exact_im) z.rad += ulp(z.im);
  z.rad = round_up(z.rad);
  return z;
}

CertifiedComplex CertifiedComplex::from_doubles(double r, double i, mpfr_prec_t prec)
{
  return from_rationals(rational_from_double(r), rational_from_double(i), prec);
}

Radius CertifiedComplex::mid_mag_upper() const { return std::hypot(mag_up(re), mag_up(im)) * kUp; }

Radius CertifiedComplex::mid_mag_lower() const { return std::hypot(mag_down(re), mag_down(im)) * kDown; }

Radius CertifiedComplex::mag_upper() const { return round_up(mid_mag_upper() + rad); }

Radius CertifiedComplex::mag_lower() const
{
  Radius m = mid_mag_lower() - rad;
  return m > 0 ? m * kDown : 0;
}

bool CertifiedComplex::contains_zero() const { return mid_mag_lower() <= rad; }

bool CertifiedComplex::contains(const Real& x, const Real& y) const
{
  return std::hypot(distance_up(x, re), distance_up(y, im)) * kUp <= rad;
}

bool CertifiedComplex::overlaps(const CertifiedComplex& other) const
{
  return std::hypot(distance_up(re, other.re), distance_up(im, other.im)) * kUp <= round_up(rad + other.rad);
}

RealBall CertifiedComplex::real() const { return RealBall(re, rad); }

RealBall CertifiedComplex::imag() const { return RealBall(im, rad); }

CertifiedComplex CertifiedComplex::conj() const
{
  CertifiedComplex z(*this);
  mpfr_neg(z.im.get(), z.im.get(), MPFR_RNDN);
  return z;
}

CertifiedComplex operator+(const CertifiedComplex& a, const CertifiedComplex& b)
{
  CertifiedComplex z(max_prec(a.re, b.re));
  mpfr_add(z.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(z.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  z.rad = a.rad + b.rad + ulp(z.re) + ulp(z.im);
  return finish(std::move(z), "complex add");
}

CertifiedComplex operator-(const CertifiedComplex& a, const CertifiedComplex& b)
{
  CertifiedComplex z(max_prec(a.re, b.re));
  mpfr_sub(z.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_sub(z.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  z.rad = a.rad + b.rad + ulp(z.re) + ulp(z.im);
  return finish(std::move(z), "complex sub");
}

CertifiedComplex operator+(const CertifiedComplex& a, const RealBall& b)
{
  CertifiedComplex z(max_prec(a.re, b.mid));
  mpfr_add(z.re.get(), a.re.get(), b.mid.get(), MPFR_RNDN);
  mpfr_set(z.im.get(), a.im.get(), MPFR_RNDN);
  z.rad = a.rad + b.rad + ulp(z.re) + (z.im.prec() < a.im.prec() ? ulp(z.im) : 0);
  return finish(std::move(z), "complex add real");
}

CertifiedComplex operator*(const CertifiedComplex& a, const CertifiedComplex& b)
{
  const mpfr_prec_t p = max_prec(a.re, b.re);
  CertifiedComplex z(p);
  Real t(p);
  mpfr_mul(z.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_sub(z.re.get(), z.re.get(), t.get(), MPFR_RNDN);
  mpfr_mul(z.im.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_mul(t.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(z.im.get(), z.im.get(), t.get(), MPFR_RNDN);
  const Radius am = a.mid_mag_upper();
  const Radius bm = b.mid_mag_upper();
  // each component: two products and one sum, each rounded to nearest
  z.rad = am * b.rad + bm * a.rad + a.rad * b.rad + 4 * eps(p) * am * bm;
  return finish(std::move(z), "complex mul");
}

CertifiedComplex operator*(const CertifiedComplex& a, const RealBall& b)
{
  CertifiedComplex z(max_prec(a.re, b.mid));
  mpfr_mul(z.re.get(), a.re.get(), b.mid.get(), MPFR_RNDN);
  mpfr_mul(z.im.get(), a.im.get(), b.mid.get(), MPFR_RNDN);
  z.rad = a.mid_mag_upper() * b.rad + mag_up(b.mid) * a.rad + a.rad * b.rad + ulp(z.re) + ulp(z.im);
  return finish(std::move(z), "complex mul real");
}

CertifiedComplex operator*(const RealBall& b, const CertifiedComplex& a) { return a * b; }

CertifiedComplex operator*(const CertifiedComplex& a, long n)
{
  CertifiedComplex z(a.prec());
  mpfr_mul_si(z.re.get(), a.re.get(), n, MPFR_RNDN);
  mpfr_mul_si(z.im.get(), a.im.get(), n, MPFR_RNDN);
  z.rad = a.rad * static_cast<Radius>(std::labs(n)) + ulp(z.re) + ulp(z.im);
  return finish(std::move(z), "complex mul_si");
}

CertifiedComplex operator-(const CertifiedComplex& a)
{
  CertifiedComplex z(a);
  mpfr_neg(z.re.get(), z.re.get(), MPFR_RNDN);
  mpfr_neg(z.im.get(), z.im.get(), MPFR_RNDN);
  return z;
}

CertifiedComplex inv(const CertifiedComplex& b)
{
  const Radius blow = b.mid_mag_lower();
  if (blow <= b.rad) throw Error(ErrorCode::DivisionByEnclosedZero, "complex division by a disk containing 0");
  const mpfr_prec_t p = b.prec();
  Real d(p);
  Real t(p);
  mpfr_sqr(d.get(), b.re.get(), MPFR_RNDN);
  mpfr_sqr(t.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(d.get(), d.get(), t.get(), MPFR_RNDN);
  CertifiedComplex z(p);
  mpfr_div(z.re.get(), b.re.get(), d.get(), MPFR_RNDN);
  mpfr_div(z.im.get(), b.im.get(), d.get(), MPFR_RNDN);
  mpfr_neg(z.im.get(), z.im.get(), MPFR_RNDN);
  const Radius inv_mag = kUp / blow;
  z.rad = 8 * eps(p) * inv_mag + b.rad / (blow * (blow - b.rad) * kDown);
  return finish(std::move(z), "complex inv");
}

CertifiedComplex operator/(const CertifiedComplex& a, const CertifiedComplex& b) { return a * inv(b); }

CertifiedComplex exp(const CertifiedComplex& x)
{
  const mpfr_prec_t p = x.prec();
  Real m(p);
  Real s(p);
  Real c(p);
  mpfr_exp(m.get(), x.re.get(), MPFR_RNDN);
  mpfr_sin_cos(s.get(), c.get(), x.im.get(), MPFR_RNDN);
  CertifiedComplex z(p);
  mpfr_mul(z.re.get(), m.get(), c.get(), MPFR_RNDN);
  mpfr_mul(z.im.get(), m.get(), s.get(), MPFR_RNDN);
  const Radius mag = mag_up(m) * kUp;
  z.rad = mag * std::expm1(x.rad) * kLibmUp + 6 * eps(p) * mag;
  return finish(std::move(z), "complex exp");
}

CertifiedComplex log(const CertifiedComplex& x)
{
  const Radius xlow = x.mid_mag_lower();
  if (xlow <= x.rad) throw Error(ErrorCode::DivisionByEnclosedZero, "log of a disk containing 0");
  if ((x.re.sign() <= 0 || mag_down(x.re) * kDown <= x.rad) && mag_down(x.im) * kDown <= x.rad) {
    throw Error(ErrorCode::PreconditionViolation, "log of a disk meeting the branch cut");
  }
  const mpfr_prec_t p = x.prec();
  CertifiedComplex z(p);
  mpfr_hypot(z.re.get(), x.re.get(), x.im.get(), MPFR_RNDN);
  mpfr_log(z.re.get(), z.re.get(), MPFR_RNDN);
  mpfr_atan2(z.im.get(), x.im.get(), x.re.get(), MPFR_RNDN);
  z.rad = 2 * eps(p) + ulp(z.re) + ulp(z.im) + x.rad / ((xlow - x.rad) * kDown);
  return finish(std::move(z), "complex log");
}

RealBall arg(const CertifiedComplex& x)
{
  const Radius xlow = x.mid_mag_lower();
  if (xlow <= x.rad) throw Error(ErrorCode::DivisionByEnclosedZero, "argument of a disk containing 0");
  RealBall r(x.prec());
  if ((x.re.sign() <= 0 || mag_down(x.re) * kDown <= x.rad) && mag_down(x.im) * kDown <= x.rad) {
    mpfr_set_zero(r.mid.get(), 1);
    r.rad = 4;
    return r;
  }
  mpfr_atan2(r.mid.get(), x.im.get(), x.re.get(), MPFR_RNDN);
  r.rad = x.rad / ((xlow - x.rad) * kDown) + ulp(r.mid);
  return finish(std::move(r), "arg");
}

RealBall abs(const CertifiedComplex& x)
{
  RealBall r(x.prec());
  mpfr_hypot(r.mid.get(), x.re.get(), x.im.get(), MPFR_RNDN);
  r.rad = x.rad + ulp(r.mid);
  return finish(std::move(r), "abs");
}

RealBall with_precision(const RealBall& x, mpfr_prec_t bits)
{
  RealBall r(bits);
  int t = mpfr_set(r.mid.get(), x.mid.get(), MPFR_RNDN);
  r.rad = x.rad + (t != 0 ? ulp(r.mid) : 0);
  return finish(std::move(r), "with_precision");
}

CertifiedComplex with_precision(const CertifiedComplex& x, mpfr_prec_t bits)
{
  CertifiedComplex z(bits);
  int tr = mpfr_set(z.re.get(), x.re.get(), MPFR_RNDN);
  int ti = mpfr_set(z.im.get(), x.im.get(), MPFR_RNDN);
  z.rad = x.rad + (tr != 0 ? ulp(z.re) : 0) + (ti != 0 ? ulp(z.im) : 0);
  return finish(std::move(z), "with_precision");
}

CertifiedComplex certified_arith(ArithOp op, const CertifiedComplex& a, const CertifiedComplex& b, Precision prec)
{
  const auto bits = static_cast<mpfr_prec_t>(prec.bits);
  CertifiedComplex x = with_precision(a, bits);
  CertifiedComplex y = with_precision(b, bits);
  switch (op) {
    case ArithOp::add: return x + y;
    case ArithOp::sub: return x - y;
    case ArithOp::mul: return x * y;
    case ArithOp::div: return x / y;
  }
  throw Error(ErrorCode::PreconditionViolation, "unknown arithmetic operator");
}

std::string to_string(const RealBall& x, int digits)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3Le", x.rad);
  return x.mid.to_string(digits) + " +/- " + buf;
}

std::string to_string(const CertifiedComplex& z, int digits)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3Le", z.rad);
  return "(" + z.re.to_string(digits) + ", " + z.im.to_string(digits) + ") +/- " + buf;
}

}  // namespace zpl
