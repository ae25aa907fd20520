#include "zpl/zero_finder.hpp"

#include "zpl/zeta.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <numbers>
#include <optional>

namespace zpl {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

enum Edge { bottom = 0, right = 1, top = 2, left = 3 };

// Counterclockwise boundary grouped by edge; vertical edges are cut at even
// ordinates.
std::array<std::vector<Segment>, 4> boundary_edges(const Region& r)
{
  std::array<std::vector<Segment>, 4> edges;
  const Rational& s0 = r.sigma_lo();
  const Rational& s1 = r.sigma_hi();
  const Rational& t0 = r.t_lo();
  const Rational& t1 = r.t_hi();
  edges[bottom].push_back({{s0, t0}, {s1, t0}});
  edges[top].push_back({{s1, t1}, {s0, t1}});

  std::vector<Rational> cuts{t0};
  mpz_class first;
  mpz_fdiv_q(first.get_mpz_t(), t0.get_num_mpz_t(), t0.get_den_mpz_t());
  first = first / 2 * 2;
  for (Rational c(first); c < t1; c += 2) {
    if (c > t0) cuts.push_back(c);
  }
  cuts.push_back(t1);
  for (std::size_t i = 1; i < cuts.size(); ++i) edges[right].push_back({{s1, cuts[i - 1]}, {s1, cuts[i]}});
  for (std::size_t i = cuts.size() - 1; i > 0; --i) edges[left].push_back({{s0, cuts[i]}, {s0, cuts[i - 1]}});
  return edges;
}

WindingResult finish_winding(const Region& rect, double total, double rad)
{
  const double k = std::nearbyint(total / kTwoPi);
  if (std::fabs(total - kTwoPi * k) + rad >= std::numbers::pi / 2) {
    throw Error(ErrorCode::CountMismatch, "argument change around " + rect.to_string() + " is not a multiple of 2pi");
  }
  if (k < 0) throw Error(ErrorCode::CountMismatch, "negative winding number around " + rect.to_string());
  WindingResult w;
  w.count = static_cast<int>(k);
  w.rect = rect;
  w.total_change = total;
  w.rad = rad;
  return w;
}

Region shifted(const Region& r, int edge, const Rational& delta)
{
  switch (edge) {
    case bottom: return Region::rectangle(r.sigma_lo(), r.sigma_hi(), r.t_lo() - delta, r.t_hi());
    case right: return Region::rectangle(r.sigma_lo(), r.sigma_hi() + delta, r.t_lo(), r.t_hi());
    case top: return Region::rectangle(r.sigma_lo(), r.sigma_hi(), r.t_lo(), r.t_hi() + delta);
    default: return Region::rectangle(r.sigma_lo() - delta, r.sigma_hi(), r.t_lo(), r.t_hi());
  }
}

Rational to_dyadic(const Real& x, int bits) { return round_to_dyadic(x.to_rational(), bits); }

std::optional<IsolatedZero> refine(SegmentTracker& tracker, const Region& rect)
{
  const Precision prec = tracker.precision();
  const auto bits = static_cast<mpfr_prec_t>(prec.bits);
  const int k = tracker.function() == TrackedFunction::zeta ? 1 : 2;
  Rational zr = (rect.sigma_lo() + rect.sigma_hi()) / 2;
  Rational zi = (rect.t_lo() + rect.t_hi()) / 2;
  bool converged = false;
  for (int it = 0; it < 60 && !converged; ++it) {
    const auto d = zeta_derivatives(CertifiedComplex::from_rationals(zr, zi, bits), k, prec);
    if (d[k].contains_zero()) return std::nullopt;
    const CertifiedComplex step = d[k - 1] / d[k];
    Real nr(bits), ni(bits);
    mpfr_sub(nr.get(), Real::from_rational(zr, bits).get(), step.re.get(), MPFR_RNDN);
    mpfr_sub(ni.get(), Real::from_rational(zi, bits).get(), step.im.get(), MPFR_RNDN);
    zr = to_dyadic(nr, 110);
    zi = to_dyadic(ni, 110);
    if (!rect.contains(zr, zi)) return std::nullopt;
    converged = step.mid_mag_upper() < std::ldexp(1.0L, -100);
  }
  if (!converged) return std::nullopt;

  IsolatedZero z;
  z.beta = round_to_dyadic(zr, 100);
  z.gamma = round_to_dyadic(zi, 100);
  z.beta_rad = pow2(-68);
  z.gamma_rad = pow2(-68);
  z.box = Region::rectangle(z.beta - z.beta_rad, z.beta + z.beta_rad, z.gamma - z.gamma_rad, z.gamma + z.gamma_rad);
  if (!rect.contains(z.box.sigma_lo(), z.box.t_lo()) || !rect.contains(z.box.sigma_hi(), z.box.t_hi())) {
    return std::nullopt;
  }
  try {
    if (winding_count_strict(tracker, z.box).count != 1) return std::nullopt;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ZeroOnPath) return std::nullopt;
    throw;
  }
  return z;
}

void subdivide(SegmentTracker& tracker, const Region& rect, int count, std::vector<IsolatedZero>& out)
{
  if (count == 0) return;
  const Rational side = std::max(rect.width(), rect.height());
  if (count == 1 && side <= Rational(1, 2)) {
    if (auto z = refine(tracker, rect)) {
      out.push_back(*z);
      return;
    }
  }
  if ((count >= 2 && side < Rational(1, mpz_class("1000000000000000"))) || side < pow2(-70)) {
    IsolatedZero z;
    z.box = rect;
    z.beta = (rect.sigma_lo() + rect.sigma_hi()) / 2;
    z.gamma = (rect.t_lo() + rect.t_hi()) / 2;
    z.beta_rad = rect.width() / 2;
    z.gamma_rad = rect.height() / 2;
    z.multiplicity = count;
    z.cluster_unresolved = count >= 2;
    out.push_back(z);
    return;
  }
  const Rational delta = std::min(pow2(-kGridBits), Rational(side / 64));
  for (int retry = 0; retry <= 3; ++retry) {
    const Rational sm = rect.sigma_lo() + rect.width() / 2 + delta * retry;
    const Rational tm = rect.t_lo() + rect.height() / 2 + delta * retry;
    const auto children = rect.quadrants(sm, tm);
    std::array<int, 4> counts{};
    try {
      for (std::size_t i = 0; i < 4; ++i) counts[i] = winding_count_strict(tracker, children[i]).count;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ZeroOnPath) continue;
      throw;
    }
    if (counts[0] + counts[1] + counts[2] + counts[3] != count) {
      throw Error(ErrorCode::CountMismatch, "quadrant counts do not add up in " + rect.to_string());
    }
    for (std::size_t i = 0; i < 4; ++i) subdivide(tracker, children[i], counts[i], out);
    return;
  }
  throw Error(ErrorCode::ZeroOnBoundary, "cannot place split lines inside " + rect.to_string());
}

}  // namespace

Rational grid_epsilon() { return pow2(-kGridBits); }

double IsolatedZero::beta_lower() const { return std::nextafter(to_double(beta - beta_rad), -1.0); }

bool zero_order(const IsolatedZero& a, const IsolatedZero& b)
{
  if (a.gamma != b.gamma) return a.gamma < b.gamma;
  return a.beta < b.beta;
}

int Isolation::multiplicity_sum() const
{
  int s = 0;
  for (const auto& z : zeros) s += z.multiplicity;
  return s;
}

WindingResult winding_count_strict(SegmentTracker& tracker, const Region& rect)
{
  if (rect.kind() != RegionKind::rectangle) throw Error(ErrorCode::PreconditionViolation, "winding needs a rectangle");
  double total = 0;
  double rad = 0;
  for (const auto& edge : boundary_edges(rect)) {
    for (const Segment& seg : edge) {
      const SegmentResult& r = tracker.track(seg);
      total += r.change;
      rad += r.rad;
    }
  }
  return finish_winding(rect, total, rad * (1 + 1e-12));
}

WindingResult winding_count(SegmentTracker& tracker, const Region& rect_in)
{
  Region rect = rect_in;
  for (int retry = 0;; ++retry) {
    const auto edges = boundary_edges(rect);
    double total = 0;
    double rad = 0;
    int failed = -1;
    for (int e = 0; e < 4 && failed < 0; ++e) {
      try {
        for (const Segment& seg : edges[e]) {
          const SegmentResult& r = tracker.track(seg);
          total += r.change;
          rad += r.rad;
        }
      } catch (const Error& err) {
        if (err.code() != ErrorCode::ZeroOnPath) throw;
        failed = e;
      }
    }
    if (failed < 0) {
      WindingResult w = finish_winding(rect, total, rad * (1 + 1e-12));
      w.retries = retry;
      return w;
    }
    if (retry == 3) {
      throw Error(ErrorCode::ZeroOnBoundary, "zero on the boundary of " + rect_in.to_string() + " after 3 shifts");
    }
    rect = shifted(rect, failed, pow2(-kGridBits) * (retry + 1));
  }
}

int winding_count(TrackedFunction f, const Region& rect, Precision prec)
{
  SegmentTracker tracker(f, prec);
  return winding_count(tracker, rect).count;
}

Isolation isolate_zeros(SegmentTracker& tracker, const Region& rect)
{
  const WindingResult w = winding_count(tracker, rect);
  Isolation out;
  out.f = tracker.function();
  out.rect = w.rect;
  out.winding_total = w.count;
  subdivide(tracker, w.rect, w.count, out.zeros);
  std::sort(out.zeros.begin(), out.zeros.end(), zero_order);
  if (out.multiplicity_sum() != out.winding_total) {
    throw Error(ErrorCode::CountMismatch, "isolated multiplicities differ from the winding number");
  }
  return out;
}

Isolation isolate_zeros(TrackedFunction f, const Region& rect, Precision prec)
{
  SegmentTracker tracker(f, prec);
  return isolate_zeros(tracker, rect);
}

Rational sigma_right()
{
  static std::once_flag once;
  static Rational value;
  std::call_once(once, [] {
    constexpr mpfr_prec_t bits = 128;
    constexpr long K = 4000;
    std::vector<RealBall> logs;
    for (long n = 0; n <= K; ++n) {
      RealBall l(bits);
      if (n >= 1 && mpfr_log_ui(l.mid.get(), static_cast<unsigned long>(n), MPFR_RNDN) != 0) {
        l.rad = round_up(ulp(l.mid));
      }
      logs.push_back(l);
    }
    for (int j = 32;; ++j) {
      const Rational sig(j, 16);
      const RealBall s = RealBall::from_rational(sig, bits);
      const RealBall lhs = logs[2] * exp(-(s * logs[2]));
      RealBall rhs(bits);
      for (long n = 3; n <= K; ++n) rhs = rhs + logs[n] * exp(-(s * logs[n]));
      const double sd = to_double(sig);
      const double k1 = static_cast<double>(K + 1);
      const double lk = std::log(k1);
      const double tail = (lk * std::pow(k1, -sd) + std::pow(k1, 1 - sd) * (lk / (sd - 1) + 1 / ((sd - 1) * (sd - 1)))) *
                          (1 + 1e-9);
      if (lhs.lower() > rhs.upper() + tail) {
        value = sig;
        break;
      }
    }
  });
  return value;
}

Region zeta_prime_window(const Rational& T) { return Region::rectangle(grid_epsilon(), sigma_right(), grid_epsilon(), T); }

Region zeta_window(const Rational& T) { return Region::rectangle(-1, 2, grid_epsilon(), T); }

Isolation enumerate_zeta_prime(SegmentTracker& tracker, const Rational& T)
{
  if (tracker.function() != TrackedFunction::zeta_prime) {
    throw Error(ErrorCode::PreconditionViolation, "enumeration tracker must follow zeta'");
  }
  const Rational s0 = grid_epsilon();
  const Rational s1 = sigma_right();
  Isolation out;
  out.f = TrackedFunction::zeta_prime;
  Rational lo = s0;
  int total = 0;
  while (lo < T) {
    Rational hi = std::min(Rational(2 * (static_cast<long>(std::floor(to_double(lo))) / 2 + 1)), T);
    if (hi <= lo) hi = lo + 2;
    int count = -1;
    Region strip = Region::rectangle(s0, s1, lo, hi);
    for (int retry = 0; retry <= 3; ++retry) {
      strip = Region::rectangle(s0, s1, lo, hi + pow2(-kGridBits) * retry);
      try {
        count = winding_count_strict(tracker, strip).count;
        break;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::ZeroOnPath) throw;
      }
    }
    if (count < 0) throw Error(ErrorCode::ZeroOnBoundary, "zero on strip boundary near t = " + exact_string(hi));
    subdivide(tracker, strip, count, out.zeros);
    total += count;
    lo = strip.t_hi();
  }
  out.rect = Region::rectangle(s0, s1, s0, lo);
  const WindingResult w = winding_count_strict(tracker, out.rect);
  out.winding_total = w.count;
  std::sort(out.zeros.begin(), out.zeros.end(), zero_order);
  if (w.count != total || out.multiplicity_sum() != total) {
    throw Error(ErrorCode::CountMismatch, "strip counts, window winding and enumeration disagree");
  }
  return out;
}

Isolation enumerate_zeta_prime(const Rational& T, Precision prec)
{
  SegmentTracker tracker(TrackedFunction::zeta_prime, prec);
  return enumerate_zeta_prime(tracker, T);
}

namespace {

int z_sign(const Rational& t, Precision prec)
{
  const RealBall z = hardy_z(t, prec);
  if (z.contains_zero()) return 0;
  return z.mid.sign();
}

// Illinois iteration on a sign change of Z in [a, b].
CriticalZero refine_critical(Rational a, Rational b, int sa, Precision prec)
{
  const auto bits = static_cast<mpfr_prec_t>(prec.bits);
  const Rational target = pow2(-67);
  Real za = hardy_z(a, prec).mid;
  Real zb = hardy_z(b, prec).mid;
  int retained = 0;
  for (int it = 0; it < 400 && b - a > target; ++it) {
    Rational c;
    if (it % 8 == 7) {
      c = (a + b) / 2;
    } else {
      Real num(bits), den(bits), q(bits);
      mpfr_sub(den.get(), zb.get(), za.get(), MPFR_RNDN);
      if (mpfr_zero_p(den.get())) {
        c = (a + b) / 2;
      } else {
        const Real width = Real::from_rational(b - a, bits);
        mpfr_mul(num.get(), zb.get(), width.get(), MPFR_RNDN);
        mpfr_div(q.get(), num.get(), den.get(), MPFR_RNDN);
        c = round_to_dyadic(b - q.to_rational(), 110);
      }
      if (!(a < c && c < b)) c = (a + b) / 2;
    }
    RealBall zc = hardy_z(c, prec);
    int sc = zc.contains_zero() ? 0 : zc.mid.sign();
    if (sc == 0) {
      // Z is numerically 0 at c; bracket it tightly.
      const Rational d = pow2(-80);
      if (z_sign(c - d, prec) == sa && z_sign(c + d, prec) == -sa) {
        a = c - d;
        b = c + d;
        break;
      }
      c = (a + b) / 2;
      zc = hardy_z(c, prec);
      sc = zc.mid.sign();
    }
    const Real& zcm = zc.mid;
    if (sc == sa) {
      a = c;
      za = zcm;
      if (retained == 1) mpfr_div_2ui(zb.get(), zb.get(), 1, MPFR_RNDN);
      retained = 1;
    } else {
      b = c;
      zb = zcm;
      if (retained == -1) mpfr_div_2ui(za.get(), za.get(), 1, MPFR_RNDN);
      retained = -1;
    }
  }
  if (b - a > target) throw Error(ErrorCode::PrecisionCeiling, "sign-change refinement did not converge");
  CriticalZero z;
  z.gamma = (a + b) / 2;
  z.rad = (b - a) / 2;
  return z;
}

}  // namespace

CriticalZeros critical_zeros_up_to(const Rational& T, Precision prec)
{
  if (T < 10) throw Error(ErrorCode::PreconditionViolation, "critical zero scan needs T >= 10");
  SegmentTracker tracker(TrackedFunction::zeta, prec);
  const WindingResult w = winding_count(tracker, zeta_window(T));
  const Rational top = w.rect.t_hi();
  CriticalZeros out;
  out.T = top;
  out.winding = w.count;
  for (int attempt = 0; attempt <= 4; ++attempt) {
    out.zeros.clear();
    Rational t = 10;
    int st = z_sign(t, prec);
    while (t < top) {
      const double td = to_double(t);
      const double gap = kTwoPi / std::log(std::max(td, 7.0) / (2 * std::numbers::pi));
      const double h = std::ldexp(std::min(0.5, gap / 8), -attempt);
      Rational next = t + std::max(floor_to_dyadic(rational_from_double(h), 10), pow2(-10 - attempt));
      if (next > top) next = top;
      int sn = z_sign(next, prec);
      if (sn == 0) sn = -st;  // Z vanishes numerically at a grid point
      if (st != 0 && sn != st) {
        CriticalZero z = refine_critical(t, next, st, prec);
        z.index = static_cast<int>(out.zeros.size()) + 1;
        out.zeros.push_back(z);
      }
      t = next;
      st = sn;
    }
    const int found = static_cast<int>(out.zeros.size());
    if (found == w.count) return out;
    if (found > w.count) throw Error(ErrorCode::CountMismatch, "more sign changes than zeros in the window");
  }
  throw Error(ErrorCode::CompletenessMismatch, "sign-change scan misses zeros below " + exact_string(T));
}

NdCount nd_count(const CriticalZeros& zeros, double T, double H)
{
  if (to_double(zeros.T) < T + H) {
    throw Error(ErrorCode::InsufficientZeroWindow, "critical zeros known only up to " + exact_string(zeros.T));
  }
  NdCount n{T, H, 0};
  double last = -1;
  for (const auto& z : zeros.zeros) {
    const double g = z.gamma_d();
    if (g >= T - H && g <= T + H && g != last) {
      ++n.count;
      last = g;
    }
  }
  return n;
}

}  // namespace zpl
