#include "zpl/lemma_lab.hpp"

#include "zpl/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numbers>

namespace zpl {

namespace {

void require_top(const Isolation& zeros, double height, const char* what)
{
  if (to_double(zeros.rect.t_hi()) < height) {
    throw Error(ErrorCode::InsufficientZeroWindow,
                std::string(what) + " needs zeros of zeta' up to " + std::to_string(height) + ", list reaches " +
                    exact_string(zeros.rect.t_hi()));
  }
}

bool right_of_line(const IsolatedZero& z) { return z.beta > Rational(1, 2) && !on_critical_line(z); }

// Calls fn(beta, gamma, zero) for each zero right of the line and for its
// conjugate.
template <class Fn>
void each_right_zero(const Isolation& zeros, Fn fn)
{
  for (const auto& z : zeros.zeros) {
    if (!right_of_line(z)) continue;
    const double b = z.beta_d();
    const double g = z.gamma_d();
    for (int m = 0; m < z.multiplicity; ++m) {
      fn(b, g);
      fn(b, -g);
    }
  }
}

double log_log(double T) { return std::log(std::log(T)); }

double f1_tail(double t, double U, double c) { return 2 * c * std::log(t + U) / U; }

}  // namespace

double f1_density_constant(const Isolation& zeros)
{
  std::map<long, double> per_unit;
  for (const auto& z : zeros.zeros) {
    if (!right_of_line(z)) continue;
    const long k = static_cast<long>(std::floor(std::fabs(z.gamma_d())));
    per_unit[k] += z.multiplicity * (z.beta_d() - 0.5) / std::log(k + 2.0);
  }
  double c = 0;
  for (const auto& [k, v] : per_unit) c = std::max(c, v);
  return c;
}

F1Value f1_eval(double t, double U, const Isolation& zeros)
{
  if (!(U >= 1)) throw Error(ErrorCode::PreconditionViolation, "F1 window needs U >= 1");
  require_top(zeros, t + U, "F1");
  F1Value v;
  v.t = t;
  v.U = U;
  each_right_zero(zeros, [&](double b, double g) {
    if (std::fabs(g - t) > U) return;
    const double a = b - 0.5;
    v.core += a / (a * a + (g - t) * (g - t));
  });
  v.tail_bound = f1_tail(t, U, f1_density_constant(zeros));
  return v;
}

double f1_window_integral(double a, double b, double U, const Isolation& zeros)
{
  if (b < a) throw Error(ErrorCode::PreconditionViolation, "integration interval reversed");
  require_top(zeros, b + U, "F1 integral");
  double sum = 0;
  each_right_zero(zeros, [&](double beta, double g) {
    if (g < a - U || g > b + U) return;
    const double w = beta - 0.5;
    sum += std::atan((b - g) / w) - std::atan((a - g) / w);
  });
  return sum;
}

GapIntegral gap_integral(int n, const CriticalZeros& critical, const Isolation& zeros, double U)
{
  if (n < 1 || static_cast<std::size_t>(n) >= critical.zeros.size()) {
    throw Error(ErrorCode::InsufficientZeroWindow, "gap " + std::to_string(n) + " beyond the critical zero list");
  }
  GapIntegral g;
  g.n = n;
  g.gamma_lo = critical.zeros[n - 1].gamma_d();
  g.gamma_hi = critical.zeros[n].gamma_d();
  g.in_window = f1_window_integral(g.gamma_lo, g.gamma_hi, U, zeros);
  g.tail = (g.gamma_hi - g.gamma_lo) * f1_tail(g.gamma_hi, U, f1_density_constant(zeros));
  return g;
}

double theta_angle(double beta, double gamma, double T, double H)
{
  if (!(beta > 0.5)) throw Error(ErrorCode::BetaOnLine, "theta needs beta' > 1/2");
  const double a = beta - 0.5;
  return std::atan((T + H - gamma) / a) - std::atan((T - H - gamma) / a);
}

double theta_angle(const IsolatedZero& z, double T, double H)
{
  if (on_critical_line(z)) throw Error(ErrorCode::BetaOnLine, "zero box straddles sigma = 1/2");
  return theta_angle(z.beta_d(), z.gamma_d(), T, H);
}

double lemma6_height(double T)
{
  const double ll = log_log(T);
  return ll * ll * ll / std::log(T);
}

Lemma6Report lemma6_report(double T, const ZeroData& zeros, double U)
{
  Lemma6Report r;
  r.T = T;
  r.H = lemma6_height(T);
  const double H = r.H;
  const double in = f1_window_integral(T - H, T + H, U, zeros.zeta_prime);
  r.I_lo = in;
  r.I_hi = in + 2 * H * f1_tail(T + H, U, f1_density_constant(zeros.zeta_prime));

  r.theta_min = std::numeric_limits<double>::infinity();
  for (const auto& z : zeros.zeta_prime.zeros) {
    if (!right_of_line(z) || z.beta_d() > 0.5 + H || std::fabs(z.gamma_d() - T) > H) continue;
    const double th = theta_angle(z, T, H);
    r.n1_R += z.multiplicity;
    r.theta_sum += z.multiplicity * th;
    r.theta_min = std::min(r.theta_min, th);
  }
  if (r.n1_R == 0) r.theta_min = 0;

  r.corner_min = std::numeric_limits<double>::infinity();
  for (double b : {0.5 + std::ldexp(1.0, -40), 0.5 + H}) {
    for (double g : {T - H, T + H}) r.corner_min = std::min(r.corner_min, theta_angle(b, g, T, H));
  }

  r.nd = nd_count(zeros.critical, T, H).count;
  r.ratio = r.n1_R / (r.nd + 1.0);
  return r;
}

Lemma4Report lemma4_residual(const Rational& sigma, const Rational& t, const Isolation& zeros, Precision prec)
{
  if (sigma < -1 || sigma > 2) throw Error(ErrorCode::PreconditionViolation, "sigma outside [-1, 2]");
  if (t < 6) throw Error(ErrorCode::PreconditionViolation, "t must be at least 6");
  const double sd = to_double(sigma);
  const double td = to_double(t);
  require_top(zeros, td + 5, "local formula");

  using C = std::complex<double>;
  const C s(sd, td);
  const double ll = log_log(td);
  const C centre(0.5 + lemma6_height(td) / (2 * ll), td);

  for (const auto& z : zeros.zeros) {
    if (std::abs(s - C(z.beta_d(), z.gamma_d())) < 1e-10) {
      throw Error(ErrorCode::DenominatorZero, "s within 1e-10 of a zero of zeta'");
    }
  }

  const CertifiedComplex L =
      log_derivative(LogDerivative::zeta_prime, CertifiedComplex::from_rationals(sigma, t, prec.bits), prec);

  Lemma4Report r;
  r.sigma = sigma;
  r.t = t;
  r.L_re = L.re_double();
  r.L_im = L.im_double();
  r.L_rad = static_cast<double>(L.rad);

  C s_circle = 0, s_disk = 0, only_disk = 0, only_circle = 0;
  double mag = 0;
  for (const auto& z : zeros.zeros) {
    for (double sign : {1.0, -1.0}) {
      const C rho(z.beta_d(), sign * z.gamma_d());
      const bool in_circle = std::abs(rho - s) < 5;
      const bool in_disk = std::abs(rho - centre) < 5;
      if (!in_circle && !in_disk) continue;
      const C term = static_cast<double>(z.multiplicity) / (s - rho);
      mag += std::abs(term);
      if (in_circle) {
        s_circle += term;
        r.n_circle += z.multiplicity;
      }
      if (in_disk) {
        s_disk += term;
        r.n_disk += z.multiplicity;
      }
      if (in_disk && !in_circle) only_disk += term;
      if (in_circle && !in_disk) only_circle += term;
    }
  }
  const C Lc(r.L_re, r.L_im);
  const double lt = std::log(td);
  r.residual = std::abs(Lc - s_circle) / lt;
  r.residual_disk = std::abs(Lc - s_disk) / lt;
  r.identity_error = std::abs((s_disk - s_circle) - (only_disk - only_circle));
  r.identity_rad = 8 * std::numeric_limits<double>::epsilon() * mag * (r.n_circle + r.n_disk + 1);
  return r;
}

double sigma3_max_angle(double H, double X)
{
  // Coordinates relative to 1/2 + iT; the segment is [0, X] on the real axis.
  auto angle = [X](double x, double y) {
    const double ux = -x, uy = -y, vx = X - x, vy = -y;
    return std::fabs(std::atan2(ux * vy - uy * vx, ux * vx + uy * vy));
  };
  double best = 0;
  constexpr int kSamples = 4000;
  for (int i = 0; i <= kSamples; ++i) {
    const double u = static_cast<double>(i) / kSamples;
    best = std::max(best, angle(u * H, H));                    // top edge (bottom is its mirror)
    best = std::max(best, angle(H, (2 * u - 1) * H));          // right edge
    best = std::max(best, angle(0, H + 10 * u * u));           // the line above the rectangle
  }
  if (X / 2 <= H) best = std::max(best, angle(X / 2, H));
  return best;
}

DiskSumReport disk_sums(double T, const std::vector<IsolatedZero>& zeros)
{
  DiskSumReport r;
  r.T = T;
  r.H = lemma6_height(T);
  const double ll = log_log(T);
  r.X = r.H / ll;
  r.disk = Region::disk(rational_from_double(0.5 + r.X / 2), rational_from_double(T), 5);

  long double s1 = 0, s2 = 0, s3 = 0, all = 0;
  for (const auto& z : zeros) {
    if (!r.disk.contains(z.beta, z.gamma)) continue;
    const double f = z.multiplicity * subtended_angle(0.5 + r.X, T, 0.5, T, z.beta_d(), z.gamma_d());
    r.f.push_back(f);
    all += f;
    const bool near = std::fabs(z.gamma_d() - T) <= r.H;
    if (on_critical_line(z) && near) {
      s2 += f;
    } else if (right_of_line(z) && near && z.beta_d() <= 0.5 + r.H) {
      s1 += f;
    } else {
      s3 += f;
      r.max_f3 = std::max(r.max_f3, std::fabs(f) / z.multiplicity);
    }
  }
  r.sum1 = static_cast<double>(s1);
  r.sum2 = static_cast<double>(s2);
  r.sum3 = static_cast<double>(s3);
  r.sum_all = static_cast<double>(all);
  r.regroup_error = static_cast<double>(std::fabs(all - (s1 + s2 + s3)));
  r.kappa = ll * sigma3_max_angle(r.H, r.X);
  return r;
}

DiskSumReport disk_sum_report(const Rational& T, const Isolation& zeros, SegmentTracker& G_tracker)
{
  const double td = to_double(T);
  require_top(zeros, td + 5, "disk sums");
  DiskSumReport r = disk_sums(td, zeros.zeros);

  const DeltaSplit d = delta_split(G_tracker, T);
  r.delta1 = d.delta1;
  r.delta2 = d.delta2;
  r.delta_rad = d.rad1 + d.rad2;

  SegmentTracker independent(TrackedFunction::G, G_tracker.precision(), G_tracker.policy().halved());
  const ArgValue g = arg_at_half(independent, T);
  r.argG = g.value;
  r.argG_rad = g.rad;

  const double ll = log_log(td);
  r.residual = -r.delta2 - r.sum_all;
  r.normalized = r.residual / (ll * ll);
  return r;
}

}  // namespace zpl
