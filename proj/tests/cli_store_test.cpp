#include "zpl/cli.hpp"
#include "zpl/store.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <functional>
#include <sstream>
#include <vector>

using namespace zpl;
namespace fs = std::filesystem;

namespace {

const fs::path kCache = fs::path(ZPL_DATA_DIR) / "cache";

struct CliRun {
  int status = 0;
  std::string out;
  std::string err;
};

CliRun zplab(std::vector<std::string> args)
{
  args.insert(args.begin(), "zplab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliRun r;
  r.status = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch(const std::string& name)
{
  const fs::path p = fs::temp_directory_path() / ("zplab-test-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
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

// The part of `c` with ordinates in [lo, hi], covering exactly that band.
ZeroCache band(const ZeroCache& c, const Rational& lo, const Rational& hi)
{
  ZeroCache b = c;
  b.covered = Region::rectangle(c.covered.sigma_lo(), c.covered.sigma_hi(), lo, hi);
  b.zeros.clear();
  for (const auto& z : c.zeros) {
    if (z.gamma >= lo && z.gamma <= hi) b.zeros.push_back(z);
  }
  b.winding = b.multiplicity_sum();
  return b;
}

}  // namespace

TEST(Store, CacheRoundTrip)
{
  for (TrackedFunction f : {TrackedFunction::zeta_prime, TrackedFunction::zeta}) {
    const std::string text = read_file(cache_path(kCache, f));
    const ZeroCache c = parse_cache(text);
    EXPECT_EQ(serialize(c), text);
    EXPECT_EQ(c.winding, c.multiplicity_sum());
  }
  const ZeroData d = load_zero_data(kCache);
  const ZeroCache again = to_cache(d.zeta_prime, 192);
  EXPECT_EQ(serialize(again), read_file(cache_path(kCache, TrackedFunction::zeta_prime)));
}

TEST(Store, MergeOfAbuttingBandsRestoresTheWhole)
{
  const ZeroCache whole = read_cache(cache_path(kCache, TrackedFunction::zeta_prime));
  const ZeroCache low = band(whole, whole.covered.t_lo(), 250);
  const ZeroCache high = band(whole, 250, whole.covered.t_hi());
  const ZeroCache merged = cache_merge(low, high);
  EXPECT_EQ(serialize(merged), serialize(whole));
  EXPECT_EQ(serialize(cache_merge(high, low)), serialize(whole));
  EXPECT_EQ(serialize(cache_merge(whole, whole)), serialize(whole));
  EXPECT_EQ(serialize(cache_merge(whole, low)), serialize(whole));
}

TEST(Store, IncompatibleCaches)
{
  const ZeroCache zp = read_cache(cache_path(kCache, TrackedFunction::zeta_prime));
  const ZeroCache z = read_cache(cache_path(kCache, TrackedFunction::zeta));
  EXPECT_EQ(code_of([&] { cache_merge(zp, z); }), ErrorCode::IncompatibleCaches);
  EXPECT_EQ(code_of([&] { cache_merge(band(zp, zp.covered.t_lo(), 100), band(zp, 200, 300)); }),
            ErrorCode::IncompatibleCaches);
  std::string text = serialize(band(zp, zp.covered.t_lo(), 100));
  text.replace(text.find(" v1 "), 4, " v2 ");
  EXPECT_EQ(code_of([&] { parse_cache(text); }), ErrorCode::IncompatibleCaches);
  EXPECT_EQ(code_of([&] { parse_cache("hello\n"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([&] { to_critical(zp); }), ErrorCode::IncompatibleCaches);
}

TEST(Store, AtomicWriteAndCalibration)
{
  const fs::path dir = scratch("atomic");
  write_file_atomic(dir / "a.txt", "one\n");
  write_file_atomic(dir / "a.txt", "two\n");
  EXPECT_EQ(read_file(dir / "a.txt"), "two\n");
  EXPECT_EQ(std::distance(fs::directory_iterator(dir), fs::directory_iterator()), 1);
  EXPECT_EQ(code_of([&] { read_file(dir / "missing"); }), ErrorCode::IoError);
  EXPECT_EQ(code_of([&] { load_zero_data(dir); }), ErrorCode::InsufficientZeroWindow);

  Calibration c;
  c.set("x.y", 0.1);
  c.save(dir / "cal.txt");
  const Calibration back = Calibration::load(dir / "cal.txt");
  EXPECT_EQ(back.get("x.y"), 0.1);
  EXPECT_EQ(code_of([&] { back.get("nope"); }), ErrorCode::ParseError);
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(-2), "-2");
}

TEST(Cli, ExitCodes)
{
  EXPECT_EQ(zplab({}).status, 2);
  EXPECT_EQ(zplab({"bogus"}).status, 2);
  EXPECT_EQ(zplab({"count"}).status, 2);
  EXPECT_EQ(zplab({"eval", "--sigma", "2", "--t", "0", "--prec", "10"}).status, 2);
  EXPECT_EQ(zplab({"error-series", "--T-grid", "60:50:1"}).status, 2);
  EXPECT_EQ(zplab({"error-series", "--T-grid", "50:60:1", "--phi", "log("}).status, 2);
  EXPECT_EQ(zplab({"eval", "--help"}).status, 0);

  const CliRun pole = zplab({"eval", "--sigma", "1", "--t", "0"});
  EXPECT_EQ(pole.status, 1);
  EXPECT_EQ(pole.err.rfind("error: PoleAtOne", 0), 0u) << pole.err;

  const fs::path empty = scratch("empty");
  EXPECT_EQ(zplab({"verify-lemma", "6", "--cache", empty.string()}).status, 2);
  const CliRun missing = zplab({"verify-lemma", "6", "--T", "100", "--cache", empty.string()});
  EXPECT_EQ(missing.status, 1);
  EXPECT_EQ(missing.err.rfind("error: InsufficientZeroWindow", 0), 0u) << missing.err;
}

TEST(Cli, EvalPrintsZetaOfTwo)
{
  const CliRun r = zplab({"eval", "--sigma", "2", "--t", "0"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("1.6449340668482264"), std::string::npos) << r.out;
}

TEST(Cli, ZerosWritesACache)
{
  const fs::path dir = scratch("zeros");
  const CliRun r = zplab({"zeros", "--f", "zetaprime", "--T", "30", "--cache", dir.string()});
  ASSERT_EQ(r.status, 0) << r.err;
  const ZeroCache c = read_cache(cache_path(dir, TrackedFunction::zeta_prime));
  ASSERT_EQ(c.zeros.size(), 1u);
  EXPECT_NEAR(c.zeros[0].gamma_d(), 23.2983, 1e-4);
}

TEST(Cli, RepeatedRunsAreByteIdentical)
{
  const fs::path dir = scratch("determinism");
  const std::string cache = kCache.string();
  for (int i = 0; i < 2; ++i) {
    const std::string n = std::to_string(i);
    ASSERT_EQ(zplab({"error-series", "--T-grid", "50:80:7.5", "--cache", cache, "--out",
                     (dir / ("series" + n)).string()})
                  .status,
              0);
    ASSERT_EQ(zplab({"delta-split", "--T", "100", "--cache", cache, "--trace", (dir / ("trace" + n)).string(),
                     "--out", (dir / ("split" + n)).string()})
                  .status,
              0);
    ASSERT_EQ(zplab({"verify-lemma", "4", "--T", "100.3", "--sigma", "3/4", "--cache", cache, "--out", (dir / ("l4_" + n)).string()}).status, 0);
  }
  for (const char* stem : {"series", "trace", "split", "l4_"}) {
    const std::string a = read_file(dir / (std::string(stem) + "0"));
    EXPECT_FALSE(a.empty()) << stem;
    EXPECT_EQ(a, read_file(dir / (std::string(stem) + "1"))) << stem;
  }
  EXPECT_EQ(read_file(dir / "series0").rfind("T,n1,n,main1,main0,argG,argZ,residual,e1,e0,r_lit,r_aka,r_phi\n", 0), 0u);
}
