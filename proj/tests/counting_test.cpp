#include "zpl/counting.hpp"
#include "zpl/store.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <functional>
#include <numbers>

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

}  // namespace

TEST(Counting, ZetaPrimeExamples)
{
  EXPECT_EQ(count_N1(20, kPrec), 0);
  EXPECT_EQ(count_N1(30, kPrec), 1);
  EXPECT_EQ(count_N1(10, kPrec), 0);
}

TEST(Counting, ZetaExamples)
{
  EXPECT_EQ(count_N(20, kPrec), 1);
  EXPECT_EQ(count_N(14, kPrec), 0);
  for (int T : {30, 60}) {
    EXPECT_EQ(count_N(T, kPrec), static_cast<int>(critical_zeros_up_to(T, kPrec).zeros.size()));
  }
}

TEST(Counting, MainTermRoots)
{
  const int bits = 256;
  const RealBall four_pi_e =
      RealBall::from_integer(4, bits) * pi_ball(bits) * exp(RealBall::from_integer(1, bits));
  const RealBall two_pi_e = four_pi_e / RealBall::from_integer(2, bits);
  EXPECT_TRUE(main_term_N1(four_pi_e).contains_zero());
  EXPECT_TRUE(main_term_N(two_pi_e).contains_zero());
  EXPECT_LT(main_term_N1(four_pi_e).rad, 1e-60L);
  EXPECT_LT(std::fabs(main_term_N1(4 * std::numbers::pi * std::numbers::e)), 1e-14);
  EXPECT_LT(std::fabs(main_term_N(2 * std::numbers::pi * std::numbers::e)), 1e-14);
}

TEST(Counting, MonotoneAndWindingAgrees)
{
  const ZeroData& z = cached_zeros();
  SegmentTracker zp(TrackedFunction::zeta_prime, kPrec);
  SegmentTracker ze(TrackedFunction::zeta, kPrec);
  int last1 = -1, last0 = -1;
  for (int T = 10; T <= 500; T += 35) {
    const CountResult c1 = count_N1(T, z.zeta_prime, zp);
    const CountResult c0 = count_N(T, z.critical, ze);
    EXPECT_EQ(c1.enumerated, c1.winding) << T;
    EXPECT_EQ(c0.enumerated, c0.winding) << T;
    EXPECT_GE(c1.enumerated, last1);
    EXPECT_GE(c0.enumerated, last0);
    last1 = c1.enumerated;
    last0 = c0.enumerated;
  }
}

TEST(Counting, JumpsEqualMultiplicity)
{
  const Isolation& iso = cached_zeros().zeta_prime;
  const Rational eps = pow2(-30);
  for (const auto& z : iso.zeros) {
    if (z.gamma_d() > 500) break;
    EXPECT_EQ(n1_enumerated(iso, z.gamma + eps) - n1_enumerated(iso, z.gamma - eps), z.multiplicity)
        << z.gamma_d();
  }
  // The same jumps by winding number for a few zeros.
  SegmentTracker zp(TrackedFunction::zeta_prime, kPrec);
  const Rational h = pow2(-20);
  for (std::size_t i : {0u, 1u, 17u, 60u}) {
    const IsolatedZero& z = iso.zeros.at(i);
    const CountResult above = count_N1(z.gamma + h, iso, zp);
    const CountResult below = count_N1(z.gamma - h, iso, zp);
    EXPECT_EQ(above.winding - below.winding, z.multiplicity) << z.gamma_d();
  }
}

TEST(Counting, MissingZerosAreReported)
{
  const ZeroData& z = cached_zeros();
  EXPECT_EQ(code_of([&] { n1_enumerated(z.zeta_prime, 600); }), ErrorCode::InsufficientZeroWindow);
  EXPECT_EQ(code_of([&] { n_enumerated(z.critical, 600); }), ErrorCode::InsufficientZeroWindow);
}

TEST(Lemma1, ResidualIsTheDefiningCombination)
{
  ArgContext ctx(kPrec);
  const CountReport r = lemma1_residual(Rational(201, 2), cached_zeros(), ctx);
  EXPECT_EQ(r.nudges, 0);
  EXPECT_EQ(r.n1_enum, n1_enumerated(cached_zeros().zeta_prime, Rational(201, 2)));
  EXPECT_EQ(r.n_enum, 29);
  EXPECT_DOUBLE_EQ(r.lemma1_residual, r.n1_enum - r.main1 - (r.argG + r.argZ) / (2 * std::numbers::pi));
  EXPECT_LT(r.arg_rad, 1e-9);
}

TEST(Lemma1, OrdinatesAreNudged)
{
  ArgContext ctx(kPrec);
  const CriticalZero& g = cached_zeros().critical.zeros.at(10);
  const CountReport r = lemma1_residual(g.gamma, cached_zeros(), ctx);
  EXPECT_GE(r.nudges, 1);
  EXPECT_GT(r.T, g.gamma);
  EXPECT_LE(r.T - g.gamma, pow2(-18));
  EXPECT_EQ(r.n_enum, 11);
}

TEST(PhiCurve, EvaluatesTheGrammar)
{
  const double T = 100;
  EXPECT_DOUBLE_EQ(PhiCurve::parse(kDefaultPhi)(T), std::sqrt(std::log(T) * std::log(std::log(T))));
  EXPECT_DOUBLE_EQ(PhiCurve::parse("2^3^2")(T), 512);
  EXPECT_DOUBLE_EQ(PhiCurve::parse("-T^2 + 3*(T - 1)/2")(T), -10000 + 148.5);
  EXPECT_DOUBLE_EQ(PhiCurve::parse("exp(log(T)/2)")(T), 10);
  EXPECT_DOUBLE_EQ(PhiCurve::parse(" 1.5e2 ")(T), 150);
  for (const char* bad : {"", "log(", "T +", "foo(T)", "2 3", "(T"}) {
    EXPECT_EQ(code_of([&] { PhiCurve::parse(bad); }), ErrorCode::ParseError) << bad;
  }
}

TEST(ErrorSeries, EmptyGridAndOrdering)
{
  ArgContext ctx(kPrec);
  const PhiCurve phi = PhiCurve::parse(kDefaultPhi);
  EXPECT_TRUE(error_series({}, cached_zeros(), ctx, phi).rows.empty());
  EXPECT_EQ(code_of([&] { error_series({Rational(60), Rational(50)}, cached_zeros(), ctx, phi); }),
            ErrorCode::PreconditionViolation);
}

TEST(ErrorSeries, BetweenTheFirstTwoOrdinates)
{
  ArgContext ctx(kPrec);
  const ErrorSeries s = error_series({Rational(17), Rational(40)}, cached_zeros(), ctx, PhiCurve::parse("T"));
  ASSERT_EQ(s.rows.size(), 2u);
  const ErrorRow& r = s.rows[0];
  EXPECT_EQ(r.report.n_enum, 1);
  EXPECT_DOUBLE_EQ(r.e0, 1 - main_term_N(17));
  EXPECT_DOUBLE_EQ(r.r_lit, std::log(17.0) / std::log(std::log(17.0)));
  EXPECT_DOUBLE_EQ(r.r_phi, 17);
  EXPECT_DOUBLE_EQ(s.rows[1].e1, s.rows[1].report.n1_enum - main_term_N1(40));
}

TEST(Dyadic, HeightsAreGeometric)
{
  const std::vector<double> y = dyadic_heights({1, 2, 3});
  EXPECT_EQ(y, (std::vector<double>{2, 4, 8}));
  EXPECT_THROW(dyadic_heights({0, 2, 3}), Error);
  EXPECT_THROW(dyadic_heights({1, 1.5, 3}), Error);
  EXPECT_THROW(dyadic_heights({1, 2, 0}), Error);
}

TEST(Dyadic, DefaultsKeepTheTopHeightBetweenOneAndE)
{
  for (double T = 50; T <= 500; T += 10) {
    const DyadicParams p = default_dyadic_params(T);
    EXPECT_DOUBLE_EQ(p.X, 1 / std::sqrt(std::log(T)));
    EXPECT_DOUBLE_EQ(p.g, std::numbers::e);
    const double yk = dyadic_heights(p).back();
    EXPECT_GE(yk, 1) << T;
    EXPECT_LE(yk, std::numbers::e) << T;
  }
}

TEST(Dyadic, AnnulusCountsAddUp)
{
  SegmentTracker zp(TrackedFunction::zeta_prime, kPrec);
  const DyadicReport r = dyadic_regions(100, default_dyadic_params(100), cached_zeros().zeta_prime, zp);
  ASSERT_FALSE(r.levels.empty());
  int total = 0;
  for (const DyadicLevel& l : r.levels) {
    EXPECT_EQ(l.winding_R, l.enumerated_R) << l.j;
    total += l.N_U;
  }
  EXPECT_EQ(total, r.levels.back().winding_R);
  EXPECT_NEAR(r.sum_total, r.sum_line + r.sum_rest + [&] {
    double s = 0;
    for (const auto& l : r.levels) s += l.sum;
    return s;
  }(), 1e-12);
}

TEST(Geometry, SubtendedAngle)
{
  // Seen from 0, s running from 1 to i turns by π/2.
  EXPECT_NEAR(subtended_angle(0, 1, 1, 0, 0, 0), std::numbers::pi / 2, 1e-15);
  EXPECT_NEAR(subtended_angle(1, 0, 0, 1, 0, 0), -std::numbers::pi / 2, 1e-15);
  EXPECT_EQ(subtended_angle(2, 5, 1, 5, 0.5, 5), 0);
}
