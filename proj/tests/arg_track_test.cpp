#include "zpl/arg_track.hpp"
#include "zpl/counting.hpp"
#include "zpl/store.hpp"

#include <gtest/gtest.h>

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

}  // namespace

TEST(ArgTrack, GIsNearlyConstantFarRight)
{
  const Path p = Path::polyline({{40, 100}, {30, 100}, {30, 140}, {45, 140}});
  const ArgTrace tr = arg_continuous(TrackedFunction::G, p, 0, kPrec);
  EXPECT_LT(std::fabs(tr.total_change), 1e-3);
  EXPECT_LT(anchor_bound(TrackedFunction::G, 30), 1e-3);
  EXPECT_LT(anchor_bound(TrackedFunction::G, anchor_sigma(TrackedFunction::G)), 1e-6);
}

TEST(ArgTrack, EmptyPathHasNoChange)
{
  const ArgTrace tr = arg_continuous(TrackedFunction::zeta, Path::horizontal(2, 2, 50), 0.25, kPrec);
  EXPECT_EQ(tr.total_change, 0);
  EXPECT_EQ(tr.end_arg(), 0.25);
}

TEST(ArgTrack, PathPassingCloseToAZeroIsRefinementStable)
{
  // The first zero of ζ' is at 2.4632 + 23.2983i; pass 10^-3 above it.
  const Path p = Path::horizontal(4, 1, Rational(233, 10));
  const ArgTrace a = arg_continuous(TrackedFunction::zeta_prime, p, 0, kPrec);
  const ArgTrace b = arg_continuous(TrackedFunction::zeta_prime, p, 0, kPrec, StepPolicy{}.halved());
  EXPECT_TRUE(std::isfinite(a.total_change));
  EXPECT_GT(std::fabs(a.total_change), 1);  // most of a half turn
  EXPECT_LE(std::fabs(a.total_change - b.total_change), a.total_rad + b.total_rad);
  EXPECT_LT(a.max_step_arg, std::numbers::pi / 2);
}

TEST(ArgTrack, ZeroOnThePathIsReported)
{
  const IsolatedZero& z = cached_zeros().zeta_prime.zeros.front();
  const Path p = Path::horizontal(z.beta + 1, z.beta - 1, z.gamma);
  EXPECT_EQ(code_of([&] { arg_continuous(TrackedFunction::zeta_prime, p, 0, kPrec); }), ErrorCode::ZeroOnPath);
}

TEST(ArgTrack, OrdinateIsZeroAtEndpoint)
{
  const Rational gamma1 = parse_rational("14.134725141734693790457251983562470270784257115699");
  EXPECT_EQ(code_of([&] { arg_at_half(TrackedFunction::zeta, gamma1, kPrec); }), ErrorCode::ZeroAtEndpoint);
  EXPECT_EQ(code_of([&] { arg_at_half(TrackedFunction::zeta, Rational(5), kPrec); }),
            ErrorCode::PreconditionViolation);
}

TEST(ArgTrack, ConcatenationIsExact)
{
  std::mt19937_64 rng(4);
  SegmentTracker tracker(TrackedFunction::G, kPrec);
  for (int i = 0; i < 20; ++i) {
    const Rational T = Rational(static_cast<long>(2000 + rng() % 30000), 64);
    const Rational mid = Rational(static_cast<long>(40 + rng() % 200), 64);
    const Path a = Path::horizontal(4, mid, T);
    const Path b = Path::horizontal(mid, Rational(1, 2), T);
    const ArgTrace whole = arg_continuous(tracker, a.then(b), 0);
    const ArgTrace pa = arg_continuous(tracker, a, 0);
    const ArgTrace pb = arg_continuous(tracker, b, 0);
    EXPECT_EQ(whole.total_change, pa.total_change + pb.total_change);
  }
}

TEST(ArgTrack, RefinementStabilityAndBranchSafety)
{
  std::mt19937_64 rng(5);
  const TrackedFunction fs[] = {TrackedFunction::zeta, TrackedFunction::zeta_prime, TrackedFunction::G};
  for (int i = 0; i < 50; ++i) {
    const TrackedFunction f = fs[i % 3];
    const Rational T = Rational(static_cast<long>(20 * 64 + rng() % (180 * 64)), 64) + Rational(1, 4096);
    const Path p = Path::horizontal(3, Rational(1, 2), T);
    ArgTrace a, b;
    try {
      a = arg_continuous(f, p, 0, kPrec);
      b = arg_continuous(f, p, 0, kPrec, StepPolicy{}.halved());
    } catch (const Error& e) {
      ADD_FAILURE() << "trace " << i << " at T = " << exact_string(T) << ": " << e.what();
      continue;
    }
    EXPECT_LE(std::fabs(a.total_change - b.total_change), a.total_rad + b.total_rad) << exact_string(T);
    EXPECT_LT(a.max_step_arg, std::numbers::pi / 2);
    EXPECT_LT(b.max_step_arg, std::numbers::pi / 2);
  }
}

TEST(ArgTrack, DeltaSplitAddsUpToArgG)
{
  const Rational T(100);
  SegmentTracker tracker(TrackedFunction::G, kPrec);
  const DeltaSplit d = delta_split(tracker, T);
  const ArgValue g = arg_at_half(TrackedFunction::G, T, kPrec, StepPolicy{}.halved());
  EXPECT_LE(std::fabs(d.delta1 + d.delta2 - g.value), d.rad1 + d.rad2 + g.rad);
  const Rational expect_split = Rational(1, 2) + rational_from_double(std::pow(std::log(std::log(100.0)), 2) / std::log(100.0));
  EXPECT_NEAR(to_double(d.sigma_split), to_double(expect_split), 1e-15);

  const DeltaSplit h = delta_split(T, kPrec, StepPolicy{}.halved());
  EXPECT_LE(std::fabs(h.delta2 - d.delta2), h.rad2 + d.rad2);
}

TEST(ArgTrack, DeltaSplitThroughAZeroIsZeroOnPath)
{
  // A zero of ζ' with 1/2 < β' < the split abscissa at T = γ'.
  const auto& zeros = cached_zeros().zeta_prime.zeros;
  const IsolatedZero* pick = nullptr;
  for (const auto& z : zeros) {
    if (z.gamma_d() > 10 && z.beta < split_sigma(z.gamma, kPrec) && z.beta_d() > 0.55) {
      pick = &z;
      break;
    }
  }
  ASSERT_NE(pick, nullptr);
  EXPECT_EQ(code_of([&] { delta_split(pick->gamma, kPrec); }), ErrorCode::ZeroOnPath);
}

TEST(ArgTrack, ArgZetaMatchesRiemannVonMangoldt)
{
  // arg ζ(1/2 + iT) = π S(T) = π (N(T) - θ(T)/π - 1).
  const CriticalZeros& crit = cached_zeros().critical;
  std::mt19937_64 rng(6);
  SegmentTracker tracker(TrackedFunction::zeta, kPrec);
  int done = 0;
  while (done < 20) {
    const Rational T = Rational(static_cast<long>(20 * 256 + rng() % (480 * 256)), 256) + Rational(1, 8192);
    const double t = to_double(T);
    bool near_ordinate = false;
    for (const auto& z : crit.zeros) near_ordinate |= std::fabs(z.gamma_d() - t) < 1e-6;
    if (near_ordinate) continue;
    const ArgValue a = arg_at_half(tracker, T);
    const double S = n_enumerated(crit, T) - smooth_count_N(t);
    EXPECT_NEAR(a.value / std::numbers::pi, S, 1e-6) << exact_string(T);
    ++done;
  }
}

TEST(ArgTrack, Probes)
{
  const Rational T(100);
  EXPECT_EQ(code_of([&] { probe_arg_G_far(T, Rational(1, 2), kPrec); }), ErrorCode::PreconditionViolation);
  EXPECT_EQ(code_of([&] { probe_arg_Gzeta_ratio(T, Rational(1, 2), kPrec); }), ErrorCode::PreconditionViolation);

  // At T = 100 the lower end 1/2 + (log log T)^2/log T is already past 3/4.
  const ProbeResult far = probe_arg_G_far(T, Rational(3, 4), kPrec);
  EXPECT_TRUE(std::isfinite(far.ratio));
  EXPECT_FALSE(far.in_lemma_range);
  const ProbeResult anchor = probe_arg_G_far(T, Rational(36), kPrec);
  EXPECT_LT(std::fabs(anchor.value), 1e-6);

  const ProbeResult r2 = probe_arg_Gzeta_ratio(T, Rational(2), kPrec);
  EXPECT_TRUE(std::isfinite(r2.ratio));
  const ProbeResult r20 = probe_arg_Gzeta_ratio(T, Rational(199, 10), kPrec);
  EXPECT_LT(std::fabs(r20.value), 1e-2);
}
