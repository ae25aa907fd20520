#include "zpl/arg_track.hpp"

#include "zpl/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace zpl {

namespace {

std::complex<double> approx(const CertifiedComplex& z) { return {z.re_double(), z.im_double()}; }

// Spacing of doubles at |x|; bounds the error of rounding a result near x.
double ulp_of(double x)
{
  const double a = std::fabs(x);
  return std::nextafter(a, std::numeric_limits<double>::infinity()) - a;
}

// Sum of radii, rounded up.
double add_up(double a, double b) { return (a + b) * (1 + 0x1p-50); }

// Principal argument of the anchoring value, with the tail bound as a
// sanity check on the branch.
ArgValue anchor_arg(SegmentTracker& tracker, const Point& start)
{
  const FunctionValue& v = tracker.value_at(start);
  const RealBall a = arg(v.value);
  const double bound = anchor_bound(tracker.function(), to_double(start.sigma));
  if (std::fabs(a.to_double()) > bound + static_cast<double>(a.rad) + 1e-12) {
    throw Error(ErrorCode::PreconditionViolation, "anchor value outside its certified tail bound");
  }
  return {a.to_double(), add_up(static_cast<double>(a.rad), ulp_of(a.to_double()))};
}

void check_endpoint(SegmentTracker& tracker, const Point& end)
{
  try {
    const FunctionValue& v = tracker.value_at(end);
    // |f/f'| estimates the distance to the nearest zero.
    if (v.log_derivative_mag > 1e15) {
      throw Error(ErrorCode::ZeroAtEndpoint, "function (numerically) vanishes at the endpoint");
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ZeroOnPath) {
      throw Error(ErrorCode::ZeroAtEndpoint, "function vanishes at the endpoint");
    }
    throw;
  }
}

double log_log(const Rational& T)
{
  const double t = to_double(T);
  if (t < 10.0) throw Error(ErrorCode::PreconditionViolation, "height must satisfy T >= 10");
  return std::log(std::log(t));
}

}  // namespace

std::string_view function_name(TrackedFunction f)
{
  switch (f) {
    case TrackedFunction::zeta: return "zeta";
    case TrackedFunction::zeta_prime: return "zetaprime";
    case TrackedFunction::G: return "G";
    case TrackedFunction::G_zeta_ratio: return "Gzeta";
  }
  return "unknown";
}

FunctionValue evaluate_tracked(TrackedFunction f, const Point& p, Precision prec)
{
  Precision cur = prec;
  for (;;) {
    const auto bits = static_cast<mpfr_prec_t>(cur.bits);
    const CertifiedComplex s = CertifiedComplex::from_rationals(p.sigma, p.t, bits);
    const int k = f == TrackedFunction::zeta ? 1 : 2;
    const auto d = zeta_derivatives(s, k, cur);
    FunctionValue out{CertifiedComplex(bits), 0};
    bool zero_inside = false;
    switch (f) {
      case TrackedFunction::zeta:
        out.value = d[0];
        out.log_derivative_mag = std::abs(approx(d[1]) / approx(d[0]));
        break;
      case TrackedFunction::zeta_prime:
        out.value = d[1];
        out.log_derivative_mag = std::abs(approx(d[2]) / approx(d[1]));
        break;
      case TrackedFunction::G:
      case TrackedFunction::G_zeta_ratio: {
        const RealBall l2 = log2_ball(bits);
        const CertifiedComplex scale = exp(s * l2) * (-(RealBall::from_integer(1, bits) / l2));
        std::complex<double> ld = std::log(2.0) + approx(d[2]) / approx(d[1]);
        if (f == TrackedFunction::G) {
          out.value = scale * d[1];
        } else if (d[0].contains_zero()) {
          zero_inside = true;
        } else {
          out.value = scale * d[1] / d[0];
          ld -= approx(d[1]) / approx(d[0]);
        }
        out.log_derivative_mag = std::abs(ld);
        break;
      }
    }
    if (!zero_inside && !out.value.contains_zero()) {
      if (!std::isfinite(out.log_derivative_mag)) out.log_derivative_mag = std::numeric_limits<double>::max();
      return out;
    }
    try {
      cur = escalate(cur);
    } catch (const Error&) {
      throw Error(ErrorCode::ZeroOnPath, "enclosure of " + std::string(function_name(f)) + " contains 0 at (" +
                                             exact_string(p.sigma) + ", " + exact_string(p.t) + ")");
    }
  }
}

StepPolicy StepPolicy::halved() const
{
  StepPolicy p = *this;
  p.initial_step /= 2;
  p.max_step /= 2;
  p.max_log_derivative_step /= 2;
  return p;
}

SegmentTracker::SegmentTracker(TrackedFunction f, Precision prec, StepPolicy policy)
    : f_(f), prec_(prec), policy_(policy)
{
}

const FunctionValue& SegmentTracker::value_at(const Point& p)
{
  auto it = values_.find(p);
  if (it != values_.end()) return it->second;
  return values_.emplace(p, evaluate_tracked(f_, p, prec_)).first->second;
}

const SegmentResult& SegmentTracker::track(const Segment& raw)
{
  Segment seg = raw;
  for (Point* p : {&seg.a, &seg.b}) {
    p->sigma.canonicalize();
    p->t.canonicalize();
  }
  const auto key = std::make_pair(seg.a, seg.b);
  if (auto it = segments_.find(key); it != segments_.end()) return it->second;
  if (auto it = segments_.find(std::make_pair(seg.b, seg.a)); it != segments_.end()) {
    const SegmentResult& fwd = it->second;
    SegmentResult rev;
    rev.change = -fwd.change;
    rev.rad = fwd.rad;
    rev.max_step_arg = fwd.max_step_arg;
    rev.steps = fwd.steps;
    const double end_arg = fwd.samples.back().arg;
    const double end_rad = fwd.samples.back().rad;
    for (auto s = fwd.samples.rbegin(); s != fwd.samples.rend(); ++s) {
      rev.samples.push_back({s->point, s->arg - end_arg, end_rad - s->rad});
    }
    return segments_.emplace(key, std::move(rev)).first->second;
  }
  return segments_.emplace(key, compute(seg)).first->second;
}

SegmentResult SegmentTracker::compute(const Segment& seg)
{
  SegmentResult r;
  r.samples.push_back({seg.a, 0, 0});
  const double len = seg.length();
  if (seg.degenerate() || len == 0) {
    value_at(seg.a);
    return r;
  }
  auto level_for = [&](double step) {
    int k = 0;
    while (std::ldexp(len, -k) > step) ++k;
    return k;
  };
  const int k_start = level_for(policy_.initial_step);
  const int k_min = std::min(level_for(policy_.max_step), k_start);
  const int k_max = k_start + policy_.max_bisections;

  Rational u = 0;
  int k = k_start;
  const FunctionValue* fa = &value_at(seg.a);
  while (u < 1) {
    const Rational ub = u + pow2(-k);
    const Point pb = ub == 1 ? seg.b : lerp(seg.a, seg.b, ub);
    const FunctionValue& fb = value_at(pb);
    const double h = std::ldexp(len, -k);
    bool ok = h * std::max(fa->log_derivative_mag, fb.log_derivative_mag) <= policy_.max_log_derivative_step;
    double inc = 0;
    double inc_rad = 0;
    if (ok) {
      const RealBall a = arg(fb.value * fa->value.conj());
      inc = a.to_double();
      inc_rad = add_up(static_cast<double>(a.rad), ulp_of(inc));
      ok = std::fabs(inc) + inc_rad < std::numbers::pi / 2;
    }
    if (!ok) {
      if (++k > k_max) {
        throw Error(ErrorCode::ZeroOnPath, "step control failed near (" + pb.sigma.get_str() + ", " +
                                               pb.t.get_str() + ") for " + std::string(function_name(f_)));
      }
      continue;
    }
    r.change += inc;
    r.rad = add_up(add_up(r.rad, inc_rad), ulp_of(r.change));
    r.max_step_arg = std::max(r.max_step_arg, std::fabs(inc) + inc_rad);
    ++r.steps;
    r.samples.push_back({pb, r.change, r.rad});
    u = ub;
    fa = &fb;
    if (k > k_min) {
      Rational scaled = u * pow2(k - 1);
      if (scaled.get_den() == 1) --k;
    }
  }
  return r;
}

ArgTrace arg_continuous(SegmentTracker& tracker, const Path& path, double start_arg)
{
  ArgTrace tr;
  tr.path = path;
  tr.start_arg = start_arg;
  for (const Segment& seg : path.segments()) {
    const SegmentResult& r = tracker.track(seg);
    const double base = tr.total_change;
    const double base_rad = tr.total_rad;
    for (std::size_t i = tr.samples.empty() ? 0 : 1; i < r.samples.size(); ++i) {
      const ArgSample& s = r.samples[i];
      tr.samples.push_back({s.point, start_arg + base + s.arg, base_rad + s.rad});
    }
    tr.total_change += r.change;
    tr.total_rad = add_up(add_up(tr.total_rad, r.rad), ulp_of(tr.total_change));
    tr.max_step_arg = std::max(tr.max_step_arg, r.max_step_arg);
  }
  return tr;
}

ArgTrace arg_continuous(TrackedFunction f, const Path& path, double start_arg, Precision prec, StepPolicy policy)
{
  SegmentTracker tracker(f, prec, policy);
  return arg_continuous(tracker, path, start_arg);
}

int anchor_sigma(TrackedFunction f)
{
  switch (f) {
    case TrackedFunction::zeta: return zeta_anchor_sigma();
    case TrackedFunction::G:
    case TrackedFunction::G_zeta_ratio: return G_anchor_sigma();
    case TrackedFunction::zeta_prime: break;
  }
  throw Error(ErrorCode::PreconditionViolation, "zeta' has no anchor at +inf");
}

double anchor_bound(TrackedFunction f, double sigma)
{
  double x = 0;
  switch (f) {
    case TrackedFunction::zeta: x = zeta_tail_bound(sigma); break;
    case TrackedFunction::G: x = G_tail_bound(sigma); break;
    case TrackedFunction::G_zeta_ratio: {
      const double z = zeta_tail_bound(sigma);
      x = (G_tail_bound(sigma) + z) / (1 - z);
      break;
    }
    case TrackedFunction::zeta_prime:
      throw Error(ErrorCode::PreconditionViolation, "zeta' has no anchor at +inf");
  }
  if (x >= 1) throw Error(ErrorCode::PreconditionViolation, "abscissa too small to anchor the argument");
  return std::asin(x);
}

ArgValue arg_at_half(SegmentTracker& tracker, const Rational& T)
{
  log_log(T);
  const Point end{Rational(1, 2), T};
  check_endpoint(tracker, end);
  const Point start{Rational(anchor_sigma(tracker.function())), T};
  const ArgValue a0 = anchor_arg(tracker, start);
  const ArgTrace tr = arg_continuous(tracker, Path::horizontal(start.sigma, end.sigma, T), a0.value);
  return {tr.end_arg(), add_up(add_up(a0.rad, tr.total_rad), ulp_of(tr.end_arg()))};
}

ArgValue arg_at_half(TrackedFunction f, const Rational& T, Precision prec, StepPolicy policy)
{
  SegmentTracker tracker(f, prec, policy);
  return arg_at_half(tracker, T);
}

Rational split_sigma(const Rational& T, Precision prec)
{
  log_log(T);
  const auto bits = static_cast<mpfr_prec_t>(prec.bits);
  Real x = Real::from_rational(T, bits);
  Real l(bits), ll(bits);
  mpfr_log(l.get(), x.get(), MPFR_RNDN);
  mpfr_log(ll.get(), l.get(), MPFR_RNDN);
  mpfr_sqr(ll.get(), ll.get(), MPFR_RNDN);
  mpfr_div(ll.get(), ll.get(), l.get(), MPFR_RNDN);
  Rational out = ll.to_rational() + Rational(1, 2);
  out.canonicalize();
  return out;
}

DeltaSplit delta_split(SegmentTracker& tracker, const Rational& T)
{
  if (tracker.function() != TrackedFunction::G) {
    throw Error(ErrorCode::PreconditionViolation, "delta split follows G");
  }
  DeltaSplit d;
  d.T = T;
  d.sigma_split = split_sigma(T, tracker.precision());
  const Point end{Rational(1, 2), T};
  check_endpoint(tracker, end);
  const Point start{Rational(anchor_sigma(TrackedFunction::G)), T};
  const ArgValue a0 = anchor_arg(tracker, start);
  const ArgTrace first = arg_continuous(tracker, Path::horizontal(start.sigma, d.sigma_split, T), a0.value);
  const ArgTrace second = arg_continuous(tracker, Path::horizontal(d.sigma_split, end.sigma, T), 0.0);
  d.delta1 = first.end_arg();
  d.rad1 = add_up(add_up(a0.rad, first.total_rad), ulp_of(d.delta1));
  d.delta2 = second.total_change;
  d.rad2 = second.total_rad;
  return d;
}

DeltaSplit delta_split(const Rational& T, Precision prec, StepPolicy policy)
{
  SegmentTracker tracker(TrackedFunction::G, prec, policy);
  return delta_split(tracker, T);
}

ProbeResult probe_arg_G_far(const Rational& T, const Rational& sigma, Precision prec)
{
  const double ll = log_log(T);
  if (sigma <= Rational(1, 2)) throw Error(ErrorCode::PreconditionViolation, "probe needs sigma > 1/2");
  SegmentTracker tracker(TrackedFunction::G, prec);
  const Rational s0(anchor_sigma(TrackedFunction::G));
  ProbeResult r;
  const Point start{std::max(s0, sigma), T};
  const ArgValue a0 = anchor_arg(tracker, start);
  const ArgTrace tr = arg_continuous(tracker, Path::horizontal(start.sigma, sigma, T), a0.value);
  r.value = tr.end_arg();
  r.rad = add_up(add_up(a0.rad, tr.total_rad), ulp_of(r.value));
  const double sd = to_double(sigma);
  const double scale = std::pow(std::log(to_double(T)), 2.0 * (1.0 - sd)) / ll;
  r.ratio = r.value / scale;
  r.in_lemma_range = split_sigma(T, prec) <= sigma && sigma <= Rational(3, 4);
  return r;
}

ProbeResult probe_arg_Gzeta_ratio(const Rational& T, const Rational& sigma, Precision prec)
{
  const double ll = log_log(T);
  if (sigma <= Rational(1, 2) || sigma >= 20) {
    throw Error(ErrorCode::PreconditionViolation, "probe needs 1/2 < sigma < 20");
  }
  SegmentTracker tracker(TrackedFunction::G_zeta_ratio, prec);
  const Point start{Rational(anchor_sigma(TrackedFunction::G_zeta_ratio)), T};
  const ArgValue a0 = anchor_arg(tracker, start);
  const ArgTrace tr = arg_continuous(tracker, Path::horizontal(start.sigma, sigma, T), a0.value);
  ProbeResult r;
  r.value = tr.end_arg();
  r.rad = add_up(add_up(a0.rad, tr.total_rad), ulp_of(r.value));
  r.ratio = r.value / (ll / (to_double(sigma) - 0.5));
  r.in_lemma_range = true;
  return r;
}

}  // namespace zpl
