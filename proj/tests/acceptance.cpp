// Acceptance run: one [PASS]/[FAIL] line per criterion, exit status 1 if
// any fails. Zero lists for the identities come from data/cache; criteria 2
// and 3 enumerate afresh and compare.

#include "zpl/cli.hpp"
#include "zpl/lemma_lab.hpp"
#include "zpl/store.hpp"
#include "zpl/zeta.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

using namespace zpl;
namespace fs = std::filesystem;

namespace {

const Precision kPrec{192, 4096};
const fs::path kData = ZPL_DATA_DIR;
constexpr double kSlack = 1.1;

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void require(bool ok, const std::string& what)
  {
    if (!ok && pass) note << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

const ZeroData& cached()
{
  static const ZeroData d = load_zero_data(kData / "cache");
  return d;
}

const Calibration& frozen()
{
  static const Calibration c = Calibration::load(kData / "calibration.txt");
  return c;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Real ref_pi()
{
  Real p(1024);
  mpfr_const_pi(p.get(), MPFR_RNDN);
  return p;
}

void special_values(Outcome& o)
{
  const auto t0 = std::chrono::steady_clock::now();
  const auto z2 = zeta_derivatives(CertifiedComplex::from_doubles(2, 0, kPrec.bits), 0, kPrec)[0];
  Real pi2 = ref_pi();
  mpfr_sqr(pi2.get(), pi2.get(), MPFR_RNDN);
  mpfr_div_ui(pi2.get(), pi2.get(), 6, MPFR_RNDN);
  o.require(z2.contains(pi2, Real(0.0, 64)) && z2.rad <= 1e-30L, "zeta(2)");

  const auto d0 = zeta_derivatives(CertifiedComplex::from_doubles(0, 0, kPrec.bits), 1, kPrec);
  o.require(d0[0].contains(Real(-0.5, 64), Real(0.0, 64)) && d0[0].rad <= 1e-30L, "zeta(0)");
  Real l2pi = ref_pi();
  mpfr_mul_2ui(l2pi.get(), l2pi.get(), 1, MPFR_RNDN);
  mpfr_log(l2pi.get(), l2pi.get(), MPFR_RNDN);
  mpfr_div_si(l2pi.get(), l2pi.get(), -2, MPFR_RNDN);
  o.require(d0[1].contains(l2pi, Real(0.0, 64)) && d0[1].rad <= 1e-30L, "zeta'(0)");

  const double s = seconds_since(t0);
  o.require(s < 1, "runtime");
  o.note << "radii " << static_cast<double>(z2.rad) << ", " << static_cast<double>(d0[1].rad) << "; " << s << " s";
}

// Fresh enumeration to 500, shared by criteria 2 and 3.
const ZeroData& fresh()
{
  static const ZeroData d = compute_zero_data(Rational(501), kPrec);
  return d;
}

void count_agreement(Outcome& o)
{
  const ZeroData& d = fresh();
  SegmentTracker zp(TrackedFunction::zeta_prime, kPrec);
  SegmentTracker ze(TrackedFunction::zeta, kPrec);
  for (int T : {50, 100, 200, 500}) {
    const CountResult c1 = count_N1(T, d.zeta_prime, zp);
    const CountResult c0 = count_N(T, d.critical, ze);
    o.require(c1.enumerated == c1.winding, "N1 at " + std::to_string(T));
    o.require(c0.enumerated == c0.winding, "N at " + std::to_string(T));
    o.require(c1.enumerated == n1_enumerated(cached().zeta_prime, T), "N1 against the cache");
    o.require(c0.enumerated == n_enumerated(cached().critical, T), "N against the cache");
    o.note << "T=" << T << ": N1=" << c1.enumerated << " N=" << c0.enumerated << "; ";
  }
}

void speiser(Outcome& o)
{
  int n = 0;
  double margin = 1;
  for (const auto& z : fresh().zeta_prime.zeros) {
    if (z.gamma_d() > 500) continue;
    o.require(z.beta_lower() > 0.5, "zero at " + std::to_string(z.gamma_d()));
    margin = std::min(margin, z.beta_lower() - 0.5);
    ++n;
  }
  o.require(n > 0, "no zeros");
  o.note << n << " zeros, smallest certified beta' - 1/2 = " << margin;
}

void lemma1(Outcome& o)
{
  ArgContext ctx(kPrec);
  const auto grid = lemma1_grid();
  double worst = 0, drift = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const CountReport r = lemma1_residual(grid[i], cached(), ctx);
    const std::string key = (i < 10 ? "lemma1.residual.0" : "lemma1.residual.") + std::to_string(i);
    drift = std::max(drift, std::fabs(r.lemma1_residual - frozen().get(key)));
    worst = std::max(worst, std::fabs(r.lemma1_residual));
  }
  const double bound = frozen().get("lemma1.max_abs_residual");
  o.require(drift <= 1e-6, "reproduction");
  o.require(worst <= kSlack * bound, "bound");
  o.note << "max |residual| " << worst << " (frozen " << bound << "), max drift " << drift;
}

void theta_identity(Outcome& o)
{
  std::mt19937_64 rng(0);
  std::uniform_real_distribution<double> beta(0.5001, 3), T(20, 500), H(0.05, 3), off(-5, 5);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const double b = beta(rng), t = T(rng), h = H(rng), g = t + off(rng), a = b - 0.5;
    double err = 0;
    const double q = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double u) { return a / (a * a + (u - g) * (u - g)); }, t - h, t + h, 15, 1e-14, &err);
    const double th = theta_angle(b, g, t, h);
    worst = std::max(worst, std::fabs(th - q));
    o.require(th > 0 && th < std::numbers::pi, "theta range");
  }
  o.require(worst <= 1e-9, "quadrature agreement");
  o.note << "max |closed form - quadrature| " << worst;
}

void lemma5(Outcome& o)
{
  double worst = 0, least = INFINITY;
  for (int n = 1; n <= kGapCount; ++n) {
    const GapIntegral g = gap_integral(n, cached().critical, cached().zeta_prime, kGapWindow);
    worst = std::max(worst, g.in_window);
    least = std::min(least, g.in_window);
  }
  const double bound = frozen().get("lemma5.max_gap_integral");
  o.require(least >= 0, "nonnegative");
  o.require(worst <= kSlack * bound, "bound");
  o.note << "max " << worst << " (frozen " << bound << "), min " << least;
}

void lemma6(Outcome& o)
{
  const double c = frozen().get("lemma6.max_ratio");
  double worst = 0;
  for (const Rational& T : lemma6_grid()) {
    const Lemma6Report r = lemma6_report(to_double(T), cached(), kLemma6Window);
    o.require(r.n1_R <= kSlack * c * (r.nd + 1), "count at " + std::to_string(r.T));
    o.require(r.I_lo >= r.theta_sum, "integral chain at " + std::to_string(r.T));
    o.require(r.n1_R == 0 || r.theta_min >= r.corner_min, "theta floor at " + std::to_string(r.T));
    worst = std::max(worst, r.ratio);
  }
  o.note << "max N1(R)/(Nd+1) " << worst << " (frozen " << c << ")";
}

void lemma4(Outcome& o)
{
  const double b = frozen().get("lemma4.max_residual");
  const double bd = frozen().get("lemma4.max_residual_disk");
  double w = 0, wd = 0;
  for (const auto& [sigma, t] : lemma4_points(static_cast<unsigned long>(frozen().get("meta.seed")))) {
    const Lemma4Report r = lemma4_residual(sigma, t, cached().zeta_prime, kPrec);
    o.require(r.identity_error <= r.identity_rad, "two-disk identity");
    w = std::max(w, r.residual);
    wd = std::max(wd, r.residual_disk);
  }
  o.require(w <= kSlack * b && wd <= kSlack * bd, "bound");
  o.note << "max residual/log t " << w << " (frozen " << b << "), disk variant " << wd << " (frozen " << bd << ")";
}

void disk_split(Outcome& o)
{
  const double bound = frozen().get("disk_split.max_normalized");
  SegmentTracker G(TrackedFunction::G, kPrec);
  double worst = 0, regroup = 0;
  for (const Rational& T : disk_split_grid()) {
    const DiskSumReport r = disk_sum_report(T, cached().zeta_prime, G);
    o.require(std::fabs(r.delta1 + r.delta2 - r.argG) <= r.delta_rad + r.argG_rad, "split sum");
    regroup = std::max(regroup, r.regroup_error);
    worst = std::max(worst, std::fabs(r.normalized));
  }
  o.require(regroup <= 1e-15, "regrouping");
  o.require(worst <= kSlack * bound, "bound");
  o.note << "max |normalized residual| " << worst << " (frozen " << bound << "), regroup error " << regroup;
}

void dyadic(Outcome& o)
{
  o.require(dyadic_heights({1, 2, 3}) == std::vector<double>{2, 4, 8}, "geometric heights");
  for (double T = 50; T <= 500; T += 5) {
    const double yk = dyadic_heights(default_dyadic_params(T)).back();
    o.require(yk >= 1 && yk <= std::numbers::e, "Y_k at " + std::to_string(T));
  }
  SegmentTracker zp(TrackedFunction::zeta_prime, kPrec);
  for (double T : {100.0, 250.0, 480.0}) {
    const DyadicReport r = dyadic_regions(T, default_dyadic_params(T), cached().zeta_prime, zp);
    int sum = 0;
    for (const auto& l : r.levels) {
      o.require(l.winding_R == l.enumerated_R, "winding vs enumeration");
      sum += l.N_U;
    }
    o.require(sum == r.levels.back().winding_R, "additivity");
    o.note << "T=" << T << ": N(R_k)=" << sum << "; ";
  }
}

void arg_tracking(Outcome& o)
{
  std::mt19937_64 rng(0);
  const TrackedFunction fs[] = {TrackedFunction::zeta, TrackedFunction::zeta_prime, TrackedFunction::G};
  double worst_step = 0, worst_ratio = 0;
  for (int i = 0; i < 50; ++i) {
    const Rational T = Rational(static_cast<long>(20 * 64 + rng() % (480 * 64)), 64) + Rational(1, 4096);
    const Path p = Path::horizontal(3, Rational(1, 2), T);
    const ArgTrace a = arg_continuous(fs[i % 3], p, 0, kPrec);
    const ArgTrace b = arg_continuous(fs[i % 3], p, 0, kPrec, StepPolicy{}.halved());
    const double diff = std::fabs(a.total_change - b.total_change);
    o.require(diff <= a.total_rad + b.total_rad, "refinement at " + exact_string(T));
    worst_ratio = std::max(worst_ratio, diff / (a.total_rad + b.total_rad));
    worst_step = std::max({worst_step, a.max_step_arg, b.max_step_arg});
  }
  o.require(worst_step < std::numbers::pi / 2, "branch step");
  o.note << "max step " << worst_step << ", max diff/radii " << worst_ratio;
}

void determinism(Outcome& o)
{
  const fs::path dir = fs::temp_directory_path() / "zplab-acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string cache = (kData / "cache").string();
  const std::vector<std::string> cmds = {
      "count --T 123.5",
      "error-series --T-grid 50:100:12.5",
      "verify-lemma 5 --gaps 40",
      "verify-lemma 6 --T 200.25",
      "dyadic --T 300",
      "delta-split --T 150 --trace " + (dir / "trace_RUN").string(),
  };
  for (std::size_t i = 0; i < cmds.size(); ++i) {
    for (const char* run : {"a", "b"}) {
      std::string cmd = cmds[i];
      if (const auto at = cmd.find("RUN"); at != std::string::npos) cmd.replace(at, 3, run);
      const fs::path outp = dir / ("out" + std::to_string(i) + run);
      const std::string line =
          std::string(ZPL_ZPLAB) + " " + cmd + " --cache " + cache + " --out " + outp.string() + " 2>/dev/null";
      o.require(std::system(line.c_str()) == 0, cmds[i]);
    }
    o.require(read_file(dir / ("out" + std::to_string(i) + "a")) == read_file(dir / ("out" + std::to_string(i) + "b")),
              cmds[i]);
  }
  o.require(read_file(dir / "trace_a") == read_file(dir / "trace_b"), "trace file");
  o.note << cmds.size() << " commands run twice";
}

}  // namespace

int main()
{
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"special values", special_values},
      {"count agreement", count_agreement},
      {"zeros of zeta' right of 1/2", speiser},
      {"counting identity residuals", lemma1},
      {"theta closed form", theta_identity},
      {"gap integrals", lemma5},
      {"short-interval zero counts", lemma6},
      {"log-derivative residual", lemma4},
      {"argument decomposition", disk_split},
      {"nested rectangles", dyadic},
      {"argument tracking", arg_tracking},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.note << "exception: " << e.what();
    }
    failed += !o.pass;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << i + 1 << " " << criteria[i].first << ": " << o.note.str()
              << " (" << std::round(seconds_since(t0) * 10) / 10 << " s)" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
