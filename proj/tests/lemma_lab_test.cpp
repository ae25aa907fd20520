#include "zpl/lemma_lab.hpp"
#include "zpl/store.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>

using namespace zpl;

namespace {

const Precision kPrec{192, 4096};

const ZeroData& cached_zeros()
{
  static const ZeroData d = load_zero_data(std::filesystem::path(ZPL_DATA_DIR) / "cache");
  return d;
}

ErrorCode code_of(const std::function<void()>& fn)
{
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::IoError;
}

// A synthetic zero with a tiny box; on_line gives a box straddling σ = 1/2.
IsolatedZero make_zero(const Rational& beta, const Rational& gamma, bool on_line = false)
{
  IsolatedZero z;
  z.beta = beta;
  z.gamma = gamma;
  z.beta_rad = pow2(-60);
  z.gamma_rad = pow2(-60);
  if (on_line) z.beta = Rational(1, 2);
  z.box = Region::rectangle(z.beta - z.beta_rad, z.beta + z.beta_rad, z.gamma - z.gamma_rad, z.gamma + z.gamma_rad);
  return z;
}

Isolation synthetic(std::vector<IsolatedZero> zeros, int top = 200)
{
  Isolation iso;
  iso.rect = zeta_prime_window(top);
  iso.zeros = std::move(zeros);
  iso.winding_total = static_cast<int>(iso.zeros.size());
  return iso;
}

double gk(const std::function<double(double)>& f, double a, double b)
{
  double err = 0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14, &err);
}

}  // namespace

TEST(F1, TrivialCases)
{
  EXPECT_EQ(f1_eval(50, 30, synthetic({})).core, 0);
  const F1Value one = f1_eval(50, 30, synthetic({make_zero(1, 50)}));
  EXPECT_DOUBLE_EQ(one.core, 2);
  EXPECT_EQ(code_of([] { f1_eval(50, 0.5, synthetic({})); }), ErrorCode::PreconditionViolation);
  EXPECT_EQ(code_of([] { f1_eval(190, 30, synthetic({})); }), ErrorCode::InsufficientZeroWindow);
}

TEST(F1, WiderWindowsStayInsideTheRange)
{
  const Isolation& zeros = cached_zeros().zeta_prime;
  for (double t : {50.0, 120.0, 300.0, 450.0}) {
    const F1Value a = f1_eval(t, 30, zeros);
    const F1Value b = f1_eval(t, 60, zeros);
    EXPECT_GE(a.core, 0);
    EXPECT_GE(b.lo(), a.lo()) << t;
    EXPECT_LE(b.hi(), a.hi()) << t;
  }
}

TEST(F1, WindowIntegralMatchesQuadrature)
{
  const Isolation& zeros = cached_zeros().zeta_prime;
  const double a = 100, b = 103, U = 20;
  const double q = gk(
      [&](double t) {
        double s = 0;
        for (const auto& z : zeros.zeros) {
          const double g = z.gamma_d(), x = z.beta_d() - 0.5;
          if (g < a - U || g > b + U || x <= 0) continue;
          s += x / (x * x + (g - t) * (g - t));
        }
        return s;
      },
      a, b);
  EXPECT_NEAR(f1_window_integral(a, b, U, zeros), q, 1e-10);
  EXPECT_EQ(f1_window_integral(a, a, U, zeros), 0);
}

TEST(GapIntegral, ArctanIdentityAndSigns)
{
  const ZeroData& d = cached_zeros();
  for (int n = 1; n <= 100; ++n) {
    const GapIntegral g = gap_integral(n, d.critical, d.zeta_prime, 30);
    EXPECT_GE(g.lo(), 0);
    EXPECT_GE(g.tail, 0);
    EXPECT_EQ(g.gamma_lo, d.critical.zeros[n - 1].gamma_d());
    if (n % 25 != 0) continue;
    double expect = 0;
    for (const auto& z : d.zeta_prime.zeros) {
      const double gp = z.gamma_d(), x = z.beta_d() - 0.5;
      if (gp < g.gamma_lo - 30 || gp > g.gamma_hi + 30) continue;
      expect += std::atan((g.gamma_hi - gp) / x) - std::atan((g.gamma_lo - gp) / x);
    }
    EXPECT_NEAR(g.in_window, expect, 1e-12) << n;
  }
  EXPECT_THROW(gap_integral(0, d.critical, d.zeta_prime, 30), Error);
}

TEST(Theta, ClosedFormMatchesQuadrature)
{
  std::mt19937_64 rng(0);
  std::uniform_real_distribution<double> beta(0.5001, 3), T(20, 500), H(0.05, 3), off(-5, 5);
  for (int i = 0; i < 100; ++i) {
    const double b = beta(rng), t = T(rng), h = H(rng), g = t + off(rng);
    const double a = b - 0.5;
    const double q = gk([&](double u) { return a / (a * a + (u - g) * (u - g)); }, t - h, t + h);
    const double th = theta_angle(b, g, t, h);
    EXPECT_NEAR(th, q, 1e-9) << b << " " << g << " " << t << " " << h;
    EXPECT_GT(th, 0);
    EXPECT_LT(th, std::numbers::pi);
  }
}

TEST(Theta, SymmetryLimitAndLine)
{
  EXPECT_DOUBLE_EQ(theta_angle(0.75, 100, 100, 1), 2 * std::atan(1 / 0.25));
  double prev = std::numbers::pi;
  for (double a = 0.01; a < 1000; a *= 2) {
    const double th = theta_angle(0.5 + a, 100, 100, 1);
    EXPECT_LT(th, prev);
    prev = th;
  }
  EXPECT_LT(prev, 1e-2);
  EXPECT_EQ(code_of([] { theta_angle(0.5, 100, 100, 1); }), ErrorCode::BetaOnLine);
  EXPECT_EQ(code_of([] { theta_angle(make_zero(0, 100, true), 100, 1); }), ErrorCode::BetaOnLine);
}

TEST(Lemma6, PositivityChain)
{
  for (double T : {60.25, 150.25, 320.25, 470.25}) {
    const Lemma6Report r = lemma6_report(T, cached_zeros());
    EXPECT_DOUBLE_EQ(r.H, lemma6_height(T));
    EXPECT_GE(r.I_lo, r.theta_sum) << T;
    EXPECT_GE(r.theta_sum, 0);
    EXPECT_NEAR(r.corner_min, std::atan(2.0), 1e-12);
    if (r.n1_R > 0) EXPECT_GE(r.theta_min, r.corner_min);
    EXPECT_DOUBLE_EQ(r.ratio, r.n1_R / (r.nd + 1.0));
  }
}

TEST(Lemma4, DenominatorZeroAndPreconditions)
{
  const Isolation& zeros = cached_zeros().zeta_prime;
  const IsolatedZero& z =
      *std::find_if(zeros.zeros.begin(), zeros.zeros.end(), [](const auto& x) { return x.beta_d() < 1.5; });
  EXPECT_EQ(code_of([&] { lemma4_residual(z.beta, z.gamma, zeros, kPrec); }), ErrorCode::DenominatorZero);
  EXPECT_EQ(code_of([&] { lemma4_residual(z.beta + Rational(1, 100000000000L), z.gamma, zeros, kPrec); }),
            ErrorCode::DenominatorZero);
  EXPECT_EQ(code_of([&] { lemma4_residual(3, 100, zeros, kPrec); }), ErrorCode::PreconditionViolation);
  EXPECT_EQ(code_of([&] { lemma4_residual(1, 4, zeros, kPrec); }), ErrorCode::PreconditionViolation);
  EXPECT_EQ(code_of([&] { lemma4_residual(1, 518, zeros, kPrec); }), ErrorCode::InsufficientZeroWindow);
}

TEST(Lemma4, TwoDiskIdentity)
{
  const Isolation& zeros = cached_zeros().zeta_prime;
  std::mt19937_64 rng(2);
  for (int i = 0; i < 10; ++i) {
    const Rational sigma = Rational(static_cast<long>(rng() % 49), 16) - 1;
    const Rational t = Rational(static_cast<long>(20 * 8 + rng() % (460 * 8)), 8) + Rational(1, 1024);
    const Lemma4Report r = lemma4_residual(sigma, t, zeros, kPrec);
    EXPECT_LE(r.identity_error, r.identity_rad) << to_double(sigma) << " " << to_double(t);
    EXPECT_GE(r.residual, 0);
    EXPECT_GT(r.n_circle, 0);
  }
}

TEST(DiskSums, SyntheticListExercisesEveryGroup)
{
  const double T = 200;
  const double ll = std::log(std::log(T));
  const double H = ll * ll * ll / std::log(T);
  const std::vector<IsolatedZero> zs = {
      make_zero(Rational(1, 2) + rational_from_double(H / 2), Rational(200) + rational_from_double(H / 3)),  // Σ1
      make_zero(0, Rational(200) + rational_from_double(H / 2), true),                                      // Σ2
      make_zero(0, Rational(200) - rational_from_double(H / 4), true),                                      // Σ2
      make_zero(Rational(3, 2), Rational(201)),                                                             // Σ3
      make_zero(Rational(9, 10), Rational(197)),                                                            // Σ3
  };
  const DiskSumReport r = disk_sums(T, zs);
  ASSERT_EQ(r.f.size(), zs.size());
  EXPECT_NE(r.sum1, 0);
  EXPECT_NE(r.sum2, 0);
  EXPECT_NE(r.sum3, 0);
  EXPECT_DOUBLE_EQ(r.sum1, r.f[0]);
  EXPECT_DOUBLE_EQ(r.sum2, r.f[1] + r.f[2]);
  EXPECT_LE(r.regroup_error, 1e-15);
  EXPECT_NEAR(r.sum1 + r.sum2 + r.sum3, r.sum_all, 1e-15);
  for (double f : r.f) EXPECT_LE(std::fabs(f), std::numbers::pi);
}

TEST(DiskSums, AngleBoundsOnRealZeros)
{
  SegmentTracker G(TrackedFunction::G, kPrec);
  for (const Rational& T : {Rational(1003, 10), Rational(2803, 10), Rational(4603, 10)}) {
    const DiskSumReport r = disk_sum_report(T, cached_zeros().zeta_prime, G);
    const double ll = std::log(std::log(r.T));
    EXPECT_EQ(r.sum2, 0);  // no zero of ζ' on the line
    for (double f : r.f) EXPECT_LE(std::fabs(f), std::numbers::pi);
    EXPECT_LE(r.max_f3, r.kappa / ll * (1 + 1e-12));
    EXPECT_NEAR(r.kappa, ll * sigma3_max_angle(r.H, r.X), 1e-12);
    EXPECT_LE(std::fabs(r.delta1 + r.delta2 - r.argG), r.delta_rad + r.argG_rad);
    EXPECT_DOUBLE_EQ(r.residual, -r.delta2 - r.sum_all);
  }
}
