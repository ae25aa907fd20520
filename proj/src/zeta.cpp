#include "zpl/zeta.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace zpl {

namespace {

// Radius of the Cauchy circle used to turn the remainder bound on ζ into
// bounds on its derivatives.
constexpr double kCauchyRadius = 0.25;
constexpr int kMaxBernoulli = 200;

// Per-precision constants. Immutable once published; a larger table
// replaces a smaller one.
struct Tables {
  mpfr_prec_t bits = 0;
  std::vector<RealBall> log_n;         // log n
  std::vector<RealBall> half_log_sq;   // (log n)^2 / 2
  std::vector<RealBall> b;             // B_2k / (2k)!
  std::vector<RealBall> bernoulli;     // B_2k
  std::vector<double> log_abs_b;       // log |B_2k / (2k)!|
  std::vector<double> log_abs_bernoulli;
};

std::mutex g_tables_mutex;
std::map<mpfr_prec_t, std::shared_ptr<const Tables>> g_tables;

void extend_logs(Tables& tab, long n_max)
{
  const long old = static_cast<long>(tab.log_n.size());
  for (long n = old; n <= n_max; ++n) {
    RealBall l(tab.bits);
    if (n >= 1) {
      int inexact = mpfr_log_ui(l.mid.get(), static_cast<unsigned long>(n), MPFR_RNDN);
      if (inexact != 0) l.rad = round_up(ulp(l.mid));
    }
    RealBall h = l * l;
    mpfr_div_2ui(h.mid.get(), h.mid.get(), 1, MPFR_RNDN);
    h.rad = h.rad / 2;
    tab.log_n.push_back(l);
    tab.half_log_sq.push_back(h);
  }
}

void extend_bernoulli(Tables& tab, int k_max)
{
  if (tab.b.empty()) {
    tab.b.emplace_back(tab.bits);
    tab.bernoulli.emplace_back(tab.bits);
    tab.log_abs_b.push_back(0);
    tab.log_abs_bernoulli.push_back(0);
  }
  const mpfr_prec_t p = tab.bits;
  const Radius eps = std::ldexp(1.0L, 1 - static_cast<int>(p));
  for (int k = static_cast<int>(tab.b.size()); k <= k_max; ++k) {
    // B_2k / (2k)! = (-1)^(k+1) 2 ζ(2k) / (2π)^(2k); each MPFR call below is
    // correctly rounded, the power amplifies the error of π by 2k.
    Real z(p), two_pi(p), pw(p);
    mpfr_zeta_ui(z.get(), static_cast<unsigned long>(2 * k), MPFR_RNDN);
    mpfr_const_pi(two_pi.get(), MPFR_RNDN);
    mpfr_mul_2ui(two_pi.get(), two_pi.get(), 1, MPFR_RNDN);
    mpfr_pow_ui(pw.get(), two_pi.get(), static_cast<unsigned long>(2 * k), MPFR_RNDN);
    RealBall bk(p);
    mpfr_div(bk.mid.get(), z.get(), pw.get(), MPFR_RNDN);
    mpfr_mul_2ui(bk.mid.get(), bk.mid.get(), 1, MPFR_RNDN);
    if (k % 2 == 0) mpfr_neg(bk.mid.get(), bk.mid.get(), MPFR_RNDN);
    bk.rad = round_up(mag_up(bk.mid) * (2 * k + 8) * eps);

    RealBall fac(p);
    if (mpfr_fac_ui(fac.mid.get(), static_cast<unsigned long>(2 * k), MPFR_RNDN) != 0) {
      fac.rad = round_up(ulp(fac.mid));
    }
    RealBall full = bk * fac;

    long e = 0;
    double m = mpfr_get_d_2exp(&e, bk.mid.get(), MPFR_RNDN);
    const double log_b = std::log(std::fabs(m)) + static_cast<double>(e) * std::log(2.0);
    tab.b.push_back(bk);
    tab.bernoulli.push_back(full);
    tab.log_abs_b.push_back(log_b);
    tab.log_abs_bernoulli.push_back(log_b + std::lgamma(2.0 * k + 1.0));
  }
}

std::shared_ptr<const Tables> tables(mpfr_prec_t bits, long n_max, int k_max)
{
  std::lock_guard<std::mutex> lock(g_tables_mutex);
  auto& slot = g_tables[bits];
  if (slot && static_cast<long>(slot->log_n.size()) > n_max && static_cast<int>(slot->b.size()) > k_max) {
    return slot;
  }
  auto fresh = slot ? std::make_shared<Tables>(*slot) : std::make_shared<Tables>();
  fresh->bits = bits;
  extend_logs(*fresh, std::max(n_max, 64L));
  extend_bernoulli(*fresh, std::max(k_max, 16));
  slot = fresh;
  return slot;
}

// Truncated Taylor jet c0 + c1 h + c2 h^2 in the variable s.
struct Jet {
  std::array<CertifiedComplex, 3> c;
  int order = 0;

  Jet(mpfr_prec_t p, int ord) : c{CertifiedComplex(p), CertifiedComplex(p), CertifiedComplex(p)}, order(ord) {}
};

Jet mul(const Jet& a, const Jet& b)
{
  Jet r(a.c[0].prec(), a.order);
  r.c[0] = a.c[0] * b.c[0];
  if (a.order >= 1) r.c[1] = a.c[0] * b.c[1] + a.c[1] * b.c[0];
  if (a.order >= 2) r.c[2] = a.c[0] * b.c[2] + a.c[1] * b.c[1] + a.c[2] * b.c[0];
  return r;
}

// a * (v + h)
Jet mul_linear(const Jet& a, const CertifiedComplex& v)
{
  Jet r(a.c[0].prec(), a.order);
  r.c[0] = a.c[0] * v;
  if (a.order >= 1) r.c[1] = a.c[1] * v + a.c[0];
  if (a.order >= 2) r.c[2] = a.c[2] * v + a.c[1];
  return r;
}

Jet scale(const Jet& a, const RealBall& x)
{
  Jet r(a.c[0].prec(), a.order);
  for (int k = 0; k <= a.order; ++k) r.c[k] = a.c[k] * x;
  return r;
}

void add_to(Jet& acc, const Jet& x)
{
  for (int k = 0; k <= acc.order; ++k) acc.c[k] = acc.c[k] + x.c[k];
}

std::vector<int> smallest_prime_factors(long n)
{
  std::vector<int> spf(static_cast<std::size_t>(n + 1), 0);
  for (long i = 2; i <= n; ++i) {
    if (spf[i] != 0) continue;
    for (long j = i; j <= n; j += i) {
      if (spf[j] == 0) spf[j] = static_cast<int>(i);
    }
  }
  return spf;
}

// log of the Backlund bound for the Euler–Maclaurin remainder after M
// corrections, taken as a supremum over the disk of radius `rho` about s.
double log_remainder_bound(const Tables& tab, int M, long N, double sigma, double t, double rho)
{
  const double sig_lo = sigma - rho;
  double acc = tab.log_abs_b[M + 1] + (1.0 - 2.0 * (M + 1) - sig_lo) * std::log(static_cast<double>(N));
  for (int j = 0; j <= 2 * M; ++j) acc += std::log(std::hypot(sigma + j, t) + rho);
  acc += std::log(std::hypot(sigma + 2 * M + 1, t) + rho);
  acc -= std::log(sig_lo + 2 * M + 1);
  return acc;
}

CertifiedComplex real_constant(const Rational& q, mpfr_prec_t p)
{
  return CertifiedComplex(RealBall::from_rational(q, p));
}

}  // namespace

long default_cutoff(double t) { return std::max(static_cast<long>(std::ceil(std::fabs(t) / 2.0)) + 10, 50L); }

std::vector<CertifiedComplex> zeta_derivatives(const CertifiedComplex& s_in, int k_max, Precision prec,
                                               std::optional<EulerMaclaurinParams> params)
{
  if (k_max < 0 || k_max > 2) throw Error(ErrorCode::PreconditionViolation, "k_max must be 0, 1 or 2");
  const auto p = static_cast<mpfr_prec_t>(prec.bits);
  const CertifiedComplex s = with_precision(s_in, p);
  const double sigma = s.re_double();
  const double t = s.im_double();
  const double rs = static_cast<double>(s.rad);
  if (!std::isfinite(sigma) || !std::isfinite(t)) throw Error(ErrorCode::Overflow, "non-finite argument");
  if (sigma - rs < -2.0) throw Error(ErrorCode::PreconditionViolation, "supported strip is sigma >= -2");

  const CertifiedComplex u = s + RealBall::from_integer(-1, p);
  if (u.contains_zero()) throw Error(ErrorCode::PoleAtOne, "enclosure of s meets the pole at 1");

  const long min_n = default_cutoff(std::fabs(t) + rs);
  const long N = params ? params->N : min_n;
  if (N < min_n) throw Error(ErrorCode::PreconditionViolation, "cutoff N below ceil(|t|/2) + 10");
  if (params && params->M < 1) throw Error(ErrorCode::PreconditionViolation, "M must be positive");

  const double rho = (k_max > 0 ? kCauchyRadius : 0.0) + rs;
  auto tab = tables(p, N, kMaxBernoulli + 1);

  int M = 0;
  double log_bound = 0;
  if (params) {
    M = params->M;
    if (M > kMaxBernoulli) tab = tables(p, N, M + 1);
    log_bound = log_remainder_bound(*tab, M, N, sigma, t, rho);
  } else {
    // Smallest M whose remainder is negligible at this precision; past the
    // minimum of the (eventually divergent) bound, keep the best M.
    const double target = -static_cast<double>(p) * std::log(2.0) - std::log(64.0);
    double best = std::numeric_limits<double>::infinity();
    for (int m = 1; m <= kMaxBernoulli; ++m) {
      const double lb = log_remainder_bound(*tab, m, N, sigma, t, rho);
      if (lb < best) {
        best = lb;
        M = m;
      } else if (lb > best + 1.0) {
        break;
      }
      if (lb < target) break;
    }
    log_bound = best;
  }
  if (sigma - rho + 2 * M + 1 <= 0) throw Error(ErrorCode::PreconditionViolation, "remainder bound invalid");

  // n^{-s}: exponentials at primes, products elsewhere.
  const std::vector<int> spf = smallest_prime_factors(N);
  std::vector<CertifiedComplex> pw;
  pw.reserve(static_cast<std::size_t>(N + 1));
  pw.emplace_back(p);
  pw.push_back(real_constant(1, p));
  const CertifiedComplex neg_s = -s;
  for (long n = 2; n <= N; ++n) {
    if (spf[n] == n) {
      pw.push_back(exp(neg_s * tab->log_n[n]));
    } else {
      pw.push_back(pw[spf[n]] * pw[n / spf[n]]);
    }
  }

  Jet acc(p, k_max);
  for (long n = 1; n < N; ++n) {
    acc.c[0] = acc.c[0] + pw[n];
    if (k_max >= 1) acc.c[1] = acc.c[1] - pw[n] * tab->log_n[n];
    if (k_max >= 2) acc.c[2] = acc.c[2] + pw[n] * tab->half_log_sq[n];
  }

  // N^{-s} as a jet.
  Jet e(p, k_max);
  e.c[0] = pw[N];
  if (k_max >= 1) e.c[1] = -(pw[N] * tab->log_n[N]);
  if (k_max >= 2) e.c[2] = pw[N] * tab->half_log_sq[N];

  // N^{1-s} / (s - 1)
  Jet inv_u(p, k_max);
  inv_u.c[0] = inv(u);
  if (k_max >= 1) inv_u.c[1] = -(inv_u.c[0] * inv_u.c[0]);
  if (k_max >= 2) inv_u.c[2] = -(inv_u.c[1] * inv_u.c[0]);
  add_to(acc, mul(scale(e, RealBall::from_integer(N, p)), inv_u));

  // N^{-s} / 2
  add_to(acc, scale(e, RealBall::from_rational(Rational(1, 2), p)));

  // Σ_k B_2k/(2k)! · s(s+1)...(s+2k-2) · N^{1-s-2k}
  Jet poly(p, k_max);
  poly.c[0] = s;
  if (k_max >= 1) poly.c[1] = real_constant(1, p);
  const RealBall inv_n = RealBall::from_rational(Rational(1, N), p);
  const RealBall inv_n2 = inv_n * inv_n;
  RealBall npow = inv_n;  // N^{1-2k}
  for (int k = 1; k <= M; ++k) {
    Jet term = mul(poly, e);
    add_to(acc, scale(term, tab->b[k] * npow));
    if (k == M) break;
    poly = mul_linear(poly, s + RealBall::from_integer(2 * k - 1, p));
    poly = mul_linear(poly, s + RealBall::from_integer(2 * k, p));
    npow = npow * inv_n2;
  }

  // Remainder, doubled, with Cauchy estimates for the derivative coefficients.
  const Radius bound = 2.0L * std::exp(static_cast<Radius>(log_bound)) * (1.0L + 1e-9L);
  for (int k = 0; k <= k_max; ++k) {
    acc.c[k].rad = round_up(acc.c[k].rad + bound / std::pow(static_cast<Radius>(kCauchyRadius), k));
  }

  std::vector<CertifiedComplex> out;
  out.push_back(acc.c[0]);
  if (k_max >= 1) out.push_back(acc.c[1]);
  if (k_max >= 2) out.push_back(acc.c[2] * 2L);
  return out;
}

GValue G_eval(const CertifiedComplex& s_in, Precision prec)
{
  const auto p = static_cast<mpfr_prec_t>(prec.bits);
  const CertifiedComplex s = with_precision(s_in, p);
  const auto d = zeta_derivatives(s, 1, prec);
  const RealBall l2 = log2_ball(p);
  CertifiedComplex two_s = exp(s * l2);
  CertifiedComplex value = (two_s * d[1]) * (-(RealBall::from_integer(1, p) / l2));
  GValue g{value, s, true};
  g.sign_determined = !g.value.contains_zero();
  return g;
}

CertifiedComplex G_dirichlet(const CertifiedComplex& s_in, long terms, Precision prec)
{
  const auto p = static_cast<mpfr_prec_t>(prec.bits);
  const CertifiedComplex s = with_precision(s_in, p);
  const double sig_lo = s.re_double() - static_cast<double>(s.rad);
  if (sig_lo < 2.0) throw Error(ErrorCode::PreconditionViolation, "Dirichlet expansion of G needs sigma >= 2");
  if (terms < 3) terms = 3;
  auto tab = tables(p, terms + 1, 1);
  const RealBall l2 = tab->log_n[2];
  CertifiedComplex acc = real_constant(1, p);
  for (long n = 3; n <= terms; ++n) {
    const RealBall coeff = tab->log_n[n] / l2;
    acc = acc + exp(s * (l2 - tab->log_n[n])) * coeff;
  }
  const double K = static_cast<double>(terms + 1);
  const double lk = std::log(K);
  const double tail = std::pow(2.0, sig_lo) / std::log(2.0) *
                      (lk * std::pow(K, -sig_lo) +
                       std::pow(K, 1.0 - sig_lo) * (lk / (sig_lo - 1.0) + 1.0 / ((sig_lo - 1.0) * (sig_lo - 1.0))));
  acc.rad = round_up(acc.rad + static_cast<Radius>(tail) * (1.0L + 1e-9L));
  return acc;
}

double G_tail_bound(double sigma)
{
  const double l3 = std::log(3.0);
  const double sm1 = sigma - 1.0;
  const double b = std::pow(2.0, sigma) / std::log(2.0) *
                   (l3 * std::pow(3.0, -sigma) + std::pow(3.0, 1.0 - sigma) * (l3 / sm1 + 1.0 / (sm1 * sm1)));
  return b * (1.0 + 1e-12);
}

double zeta_tail_bound(double sigma) { return std::pow(2.0, -sigma) * (1.0 + 2.0 / (sigma - 1.0)) * (1.0 + 1e-12); }

int G_anchor_sigma(double tol)
{
  int s = 10;
  while (G_tail_bound(s) >= tol) ++s;
  return s;
}

int zeta_anchor_sigma(double tol)
{
  int s = 10;
  while (zeta_tail_bound(s) >= tol) ++s;
  return s;
}

CertifiedComplex log_derivative(LogDerivative which, const CertifiedComplex& s, Precision prec)
{
  const int k = which == LogDerivative::zeta ? 1 : 2;
  const auto d = zeta_derivatives(s, k, prec);
  const CertifiedComplex& num = d[k];
  const CertifiedComplex& den = d[k - 1];
  if (den.contains_zero()) {
    throw Error(ErrorCode::DenominatorZero, which == LogDerivative::zeta ? "zeta vanishes in the enclosure"
                                                                          : "zeta' vanishes in the enclosure");
  }
  CertifiedComplex q = num / den;
  if (which == LogDerivative::G) q = q + log2_ball(static_cast<mpfr_prec_t>(prec.bits));
  return q;
}

RealBall riemann_siegel_theta(const RealBall& t)
{
  const mpfr_prec_t p = t.prec();
  const double td = t.to_double();
  auto tab = tables(p, 64, 80);

  // z = 1/4 + it/2
  RealBall half_t = t;
  mpfr_div_2ui(half_t.mid.get(), half_t.mid.get(), 1, MPFR_RNDN);
  half_t.rad = half_t.rad / 2;
  CertifiedComplex z(RealBall::from_rational(Rational(1, 4), p).mid, half_t.mid, half_t.rad);

  // Shift so that Stirling's series converges to the working precision.
  const double target = std::max(20.0, static_cast<double>(p) / 4.0);
  int shift = 0;
  while (std::hypot(0.25 + shift, td / 2.0) < target) ++shift;
  CertifiedComplex w = z + RealBall::from_integer(shift, p);
  const double wmag = std::hypot(0.25 + shift, td / 2.0);

  // Number of terms: for Re w > 0 the remainder after K terms is at most
  // |B_{2K+2}| / ((2K+2)(2K+1)|w|^{2K+1}) · 2^{K+1}.
  const double target_log = -static_cast<double>(p) * std::log(2.0) - std::log(16.0);
  int K = 1;
  double log_rem = 0;
  for (;; ++K) {
    if (K + 1 >= static_cast<int>(tab->b.size())) tab = tables(p, 64, K + 8);
    log_rem = tab->log_abs_bernoulli[K + 1] - std::log((2.0 * K + 2) * (2.0 * K + 1)) -
              (2.0 * K + 1) * std::log(wmag) + (K + 1) * std::log(2.0);
    if (log_rem < target_log || K >= 300) break;
  }

  const RealBall half = RealBall::from_rational(Rational(1, 2), p);
  CertifiedComplex lg = (w + (-half)) * log(w) - w;
  RealBall two_pi = pi_ball(p) * 2L;
  lg = lg + log(two_pi) * half;
  const CertifiedComplex winv = inv(w);
  const CertifiedComplex winv2 = winv * winv;
  CertifiedComplex wpow = winv;
  for (int k = 1; k <= K; ++k) {
    const RealBall c = tab->bernoulli[k] / RealBall::from_integer(static_cast<long>(2 * k) * (2 * k - 1), p);
    lg = lg + wpow * c;
    wpow = wpow * winv2;
  }
  lg.rad = round_up(lg.rad + std::exp(static_cast<Radius>(log_rem)) * (1.0L + 1e-9L));
  for (int j = 0; j < shift; ++j) lg = lg - log(z + RealBall::from_integer(j, p));

  RealBall theta = lg.imag() - half_t * log(pi_ball(p));
  return theta;
}

RealBall hardy_z(const Rational& t, Precision prec)
{
  const auto p = static_cast<mpfr_prec_t>(prec.bits);
  const RealBall tb = RealBall::from_rational(t, p);
  const RealBall th = riemann_siegel_theta(tb);
  const RealBall c = cos(th);
  const RealBall s = sin(th);
  CertifiedComplex rot(c.mid, s.mid, round_up(c.rad + s.rad));
  const auto z = zeta_derivatives(CertifiedComplex::from_rationals(Rational(1, 2), t, p), 0, prec);
  return (rot * z[0]).real();
}

}  // namespace zpl
