#include "zpl/cli.hpp"

#include "zpl/lemma_lab.hpp"
#include "zpl/zeta.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

namespace zpl {

std::vector<Rational> parse_grid(const std::string& text)
{
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (b == std::string::npos) throw Error(ErrorCode::ParseError, "grid must be lo:hi:step, got '" + text + "'");
  const Rational lo = parse_rational(text.substr(0, a));
  const Rational hi = parse_rational(text.substr(a + 1, b - a - 1));
  const Rational step = parse_rational(text.substr(b + 1));
  if (sgn(step) <= 0) throw Error(ErrorCode::ParseError, "grid step must be positive");
  if (hi < lo) throw Error(ErrorCode::ParseError, "grid end below its start");
  std::vector<Rational> out;
  for (Rational t = lo; t <= hi; t += step) {
    t.canonicalize();
    out.push_back(t);
  }
  return out;
}

namespace {

std::vector<Rational> arithmetic(Rational start, Rational step, int count)
{
  std::vector<Rational> out;
  for (int i = 0; i < count; ++i) {
    Rational t = start + step * i;
    t.canonicalize();
    out.push_back(t);
  }
  return out;
}

std::string key_index(const char* prefix, std::size_t i)
{
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02zu", i);
  return std::string(prefix) + buf;
}

}  // namespace

std::vector<Rational> lemma1_grid() { return arithmetic(Rational(101, 2), 9, 50); }
std::vector<Rational> lemma6_grid() { return arithmetic(Rational(201, 4), 9, 50); }
std::vector<Rational> disk_split_grid() { return arithmetic(Rational(503, 10), Rational(45, 2), 20); }

std::vector<std::pair<Rational, Rational>> lemma4_points(unsigned long seed)
{
  // Raw engine output only, so the points do not depend on the library's
  // distribution algorithms.
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Rational, Rational>> out;
  for (int i = 0; i < 30; ++i) {
    Rational sigma(static_cast<long>(rng() % 49), 16);  // [-1, 2] in steps of 1/16
    Rational t(static_cast<long>(rng() % 3681), 8);     // [20, 480] in steps of 1/8
    sigma.canonicalize();
    t.canonicalize();
    out.emplace_back(sigma - 1, t + 20 + Rational(1, 1024));
  }
  return out;
}

ZeroData zero_data_for(const std::filesystem::path& dir, const Rational& height, Precision prec)
{
  const auto zp = cache_path(dir, TrackedFunction::zeta_prime);
  const auto z = cache_path(dir, TrackedFunction::zeta);
  if (std::filesystem::exists(zp) && std::filesystem::exists(z)) {
    ZeroData d = load_zero_data(dir);
    if (d.zeta_prime_top() >= height && d.critical_top() >= height) return d;
  }
  const Rational h = height < 10 ? Rational(10) : height;
  ZeroData d = compute_zero_data(h, prec);
  write_cache(zp, to_cache(d.zeta_prime, prec.bits));
  write_cache(z, to_cache(d.critical, prec.bits));
  return d;
}

Calibration calibrate(const ZeroData& zeros, Precision prec, unsigned long seed)
{
  Calibration c;
  c.set("meta.prec", prec.bits);
  c.set("meta.seed", static_cast<double>(seed));

  ArgContext ctx(prec);
  double worst = 0;
  const auto g1 = lemma1_grid();
  for (std::size_t i = 0; i < g1.size(); ++i) {
    const CountReport r = lemma1_residual(g1[i], zeros, ctx);
    c.set(key_index("lemma1.residual.", i), r.lemma1_residual);
    worst = std::max(worst, std::fabs(r.lemma1_residual));
  }
  c.set("lemma1.max_abs_residual", worst);

  double gap_max = 0;
  for (int n = 1; n <= kGapCount; ++n) {
    gap_max = std::max(gap_max, gap_integral(n, zeros.critical, zeros.zeta_prime, kGapWindow).in_window);
  }
  c.set("lemma5.max_gap_integral", gap_max);

  double ratio = 0;
  for (const Rational& T : lemma6_grid()) {
    ratio = std::max(ratio, lemma6_report(to_double(T), zeros, kLemma6Window).ratio);
  }
  c.set("lemma6.max_ratio", ratio);

  double l4 = 0, l4d = 0;
  for (const auto& [sigma, t] : lemma4_points(seed)) {
    const Lemma4Report r = lemma4_residual(sigma, t, zeros.zeta_prime, prec);
    l4 = std::max(l4, r.residual);
    l4d = std::max(l4d, r.residual_disk);
  }
  c.set("lemma4.max_residual", l4);
  c.set("lemma4.max_residual_disk", l4d);

  SegmentTracker G(TrackedFunction::G, prec);
  double s3 = 0;
  for (const Rational& T : disk_split_grid()) {
    s3 = std::max(s3, std::fabs(disk_sum_report(T, zeros.zeta_prime, G).normalized));
  }
  c.set("disk_split.max_normalized", s3);
  return c;
}

namespace {

struct Options {
  std::string T;
  std::string grid;
  int prec = 192;
  std::string cache = "cache";
  std::string out;
  std::string phi = kDefaultPhi;
  unsigned long seed = 0;
  std::string f = "zetaprime";
  std::string sigma;
  std::string t;
  std::string trace;
  int lemma = 0;
  int gaps = kGapCount;
  double X = 0, g = 0;
  int k = 0;
};

class Output {
 public:
  void line(const std::string& key, const std::string& value) { text_ += key + " " + value + "\n"; }
  void line(const std::string& key, double value) { line(key, format_double(value)); }
  void line(const std::string& key, int value) { line(key, std::to_string(value)); }
  void raw(const std::string& s) { text_ += s; }

  void flush(const std::string& path, std::ostream& out) const
  {
    if (path.empty()) {
      out << text_;
    } else {
      write_file_atomic(path, text_);
    }
  }

 private:
  std::string text_;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational arg_rational(const char* flag, const std::string& text)
{
  if (text.empty()) throw UsageError(std::string(flag) + " is required");
  try {
    return parse_rational(text);
  } catch (const Error&) {
    throw UsageError(std::string(flag) + ": not a number: '" + text + "'");
  }
}

Rational need_T(const Options& o) { return arg_rational("--T", o.T); }

TrackedFunction parse_function(const std::string& name)
{
  if (name == "zeta") return TrackedFunction::zeta;
  if (name == "zetaprime") return TrackedFunction::zeta_prime;
  throw Error(ErrorCode::ParseError, "unknown function '" + name + "'");
}

// Slack above T so that nudged heights stay inside the zero lists.
Rational padded(const Rational& T) { return T + Rational(1, 64); }

void cmd_eval(const Options& o, Precision prec, Output& out)
{
  const auto s = CertifiedComplex::from_rationals(arg_rational("--sigma", o.sigma), arg_rational("--t", o.t), prec.bits);
  const auto d = zeta_derivatives(s, 2, prec);
  out.line("zeta", to_string(d[0], 30));
  out.line("zeta1", to_string(d[1], 30));
  out.line("zeta2", to_string(d[2], 30));
  out.line("G", to_string(G_eval(s, prec).value, 30));
}

void cmd_zeros(const Options& o, Precision prec, Output& out)
{
  const Rational T = need_T(o);
  const TrackedFunction f = parse_function(o.f);
  ZeroCache cache;
  if (f == TrackedFunction::zeta_prime) {
    cache = to_cache(enumerate_zeta_prime(T, prec), prec.bits);
  } else {
    cache = to_cache(critical_zeros_up_to(T, prec), prec.bits);
  }
  const std::filesystem::path path = o.out.empty() ? cache_path(o.cache, f) : std::filesystem::path(o.out);
  write_cache(path, cache);
  out.line("file", path.string());
  out.line("records", static_cast<int>(cache.zeros.size()));
  out.line("winding", cache.winding);
}

void cmd_series(const std::vector<Rational>& grid, const Options& o, Precision prec, Output& out)
{
  PhiCurve phi;
  try {
    phi = PhiCurve::parse(o.phi);
  } catch (const Error& e) {
    throw UsageError(std::string("--phi: ") + e.what());
  }
  const ZeroData zeros = grid.empty() ? ZeroData{} : zero_data_for(o.cache, padded(grid.back()), prec);
  ArgContext ctx(prec);
  out.raw(counts_csv(error_series(grid, zeros, ctx, phi)));
}

void cmd_delta_split(const Options& o, Precision prec, Output& out)
{
  const Rational T = need_T(o);
  SegmentTracker G(TrackedFunction::G, prec);
  const DeltaSplit d = delta_split(G, T);
  out.line("T", exact_string(d.T));
  out.line("sigma_split", fixed_string(d.sigma_split, 30));
  out.line("delta1", d.delta1);
  out.line("delta2", d.delta2);
  out.line("rad1", d.rad1);
  out.line("rad2", d.rad2);
  out.line("argG", d.delta1 + d.delta2);
  if (!o.trace.empty()) {
    const Rational start(anchor_sigma(TrackedFunction::G));
    const ArgTrace tr = arg_continuous(G, Path::horizontal(start, Rational(1, 2), T), 0.0);
    write_file_atomic(o.trace, trace_csv(tr));
  }
}

void cmd_dyadic(const Options& o, Precision prec, Output& out)
{
  const Rational T = need_T(o);
  const double td = to_double(T);
  DyadicParams p = default_dyadic_params(td);
  if (o.X > 0) p.X = o.X;
  if (o.g > 0) p.g = o.g;
  if (o.k > 0) p.k = o.k;
  const ZeroData zeros = load_zero_data(o.cache);
  SegmentTracker tracker(TrackedFunction::zeta_prime, prec);
  const DyadicReport r = dyadic_regions(td, p, zeros.zeta_prime, tracker);
  out.line("X", r.X);
  out.line("g", r.g);
  out.line("k", r.k);
  out.raw("j,Y,winding_R,enumerated_R,N_U,sum\n");
  for (const auto& lv : r.levels) {
    out.raw(std::to_string(lv.j) + "," + format_double(lv.Y) + "," + std::to_string(lv.winding_R) + "," +
            std::to_string(lv.enumerated_R) + "," + std::to_string(lv.N_U) + "," + format_double(lv.sum) + "\n");
  }
  out.line("sum_line", r.sum_line);
  out.line("sum_rest", r.sum_rest);
  out.line("sum_total", r.sum_total);
}

void cmd_lemma(const Options& o, Precision prec, Output& out)
{
  switch (o.lemma) {
    case 1: {
      const Rational T = need_T(o);
      cmd_series({T}, o, prec, out);
      return;
    }
    case 2:
    case 3: {
      const Rational T = need_T(o);
      const Rational sigma = arg_rational("--sigma", o.sigma);
      const ProbeResult r =
          o.lemma == 2 ? probe_arg_G_far(T, sigma, prec) : probe_arg_Gzeta_ratio(T, sigma, prec);
      out.line("arg", r.value);
      out.line("rad", r.rad);
      out.line("ratio", r.ratio);
      out.line("in_lemma_range", r.in_lemma_range ? 1 : 0);
      return;
    }
    case 4: {
      const Rational T = need_T(o);
      const Rational sigma = o.sigma.empty() ? Rational(1, 2) : arg_rational("--sigma", o.sigma);
      const ZeroData zeros = load_zero_data(o.cache);
      const Lemma4Report r = lemma4_residual(sigma, T, zeros.zeta_prime, prec);
      out.line("L_re", r.L_re);
      out.line("L_im", r.L_im);
      out.line("residual", r.residual);
      out.line("residual_disk", r.residual_disk);
      out.line("n_circle", r.n_circle);
      out.line("n_disk", r.n_disk);
      out.line("identity_error", r.identity_error);
      return;
    }
    case 5: {
      const ZeroData zeros = load_zero_data(o.cache);
      out.raw("n,gamma_lo,gamma_hi,in_window,tail\n");
      for (int n = 1; n <= o.gaps; ++n) {
        const GapIntegral g = gap_integral(n, zeros.critical, zeros.zeta_prime, kGapWindow);
        out.raw(std::to_string(n) + "," + format_double(g.gamma_lo) + "," + format_double(g.gamma_hi) + "," +
                format_double(g.in_window) + "," + format_double(g.tail) + "\n");
      }
      return;
    }
    case 6: {
      const Rational T = need_T(o);
      const ZeroData zeros = load_zero_data(o.cache);
      const Lemma6Report r = lemma6_report(to_double(T), zeros, kLemma6Window);
      out.line("H", r.H);
      out.line("I_lo", r.I_lo);
      out.line("I_hi", r.I_hi);
      out.line("theta_sum", r.theta_sum);
      out.line("corner_min", r.corner_min);
      out.line("n1_R", r.n1_R);
      out.line("nd", r.nd);
      out.line("ratio", r.ratio);
      return;
    }
    default: throw UsageError("lemma must be 1..6");
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
  CLI::App app{"zeros of zeta' and their counting identities", "zplab"};
  app.require_subcommand(1);
  Options o;

  auto common = [&o](CLI::App* sub) {
    sub->add_option("--prec", o.prec, "working precision in bits")->check(CLI::Range(64, 4096));
    sub->add_option("--cache", o.cache, "zero cache directory");
    sub->add_option("--out", o.out, "output file (default stdout)");
    sub->add_option("--seed", o.seed, "seed for sampled points");
  };

  auto* eval = app.add_subcommand("eval", "zeta, zeta', zeta'' and G at s = sigma + it");
  eval->add_option("--sigma", o.sigma)->required();
  eval->add_option("--t", o.t)->required();
  common(eval);

  auto* zeros = app.add_subcommand("zeros", "enumerate zeros up to height T and write a cache");
  zeros->add_option("--f", o.f)->check(CLI::IsMember({"zeta", "zetaprime"}));
  zeros->add_option("--T", o.T)->required();
  common(zeros);

  auto* count = app.add_subcommand("count", "N1(T), N(T) and the counting identity residual");
  count->add_option("--T", o.T)->required();
  common(count);

  auto* series = app.add_subcommand("error-series", "error terms over a grid of heights as CSV");
  series->add_option("--T-grid", o.grid, "lo:hi:step")->required();
  series->add_option("--phi", o.phi, "reference curve in T");
  common(series);

  auto* lemma = app.add_subcommand("verify-lemma", "numerical check of one lemma");
  lemma->add_option("lemma", o.lemma)->required()->check(CLI::Range(1, 6));
  lemma->add_option("--T", o.T);
  lemma->add_option("--sigma", o.sigma);
  lemma->add_option("--gaps", o.gaps)->check(CLI::Range(1, 10000));
  common(lemma);

  auto* split = app.add_subcommand("delta-split", "arg G(1/2 + iT) split at 1/2 + (log log T)^2/log T");
  split->add_option("--T", o.T)->required();
  split->add_option("--trace", o.trace, "CSV file for the argument trace");
  common(split);

  auto* dyadic = app.add_subcommand("dyadic", "nested rectangles about 1/2 + iT and their zero counts");
  dyadic->add_option("--T", o.T)->required();
  dyadic->add_option("--X", o.X)->check(CLI::PositiveNumber);
  dyadic->add_option("--g", o.g)->check(CLI::Range(2.0, 1e6));
  dyadic->add_option("--k", o.k)->check(CLI::Range(1, 64));
  common(dyadic);

  auto* calib = app.add_subcommand("calibrate", "measure the calibration constants");
  common(calib);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  std::vector<Rational> grid;
  if (series->parsed()) {
    try {
      grid = parse_grid(o.grid);
    } catch (const Error& e) {
      err << "usage: " << e.what() << "\n";
      return 2;
    }
  }

  const Precision prec{o.prec, 4096};
  Output result;
  try {
    if (eval->parsed()) {
      cmd_eval(o, prec, result);
    } else if (zeros->parsed()) {
      cmd_zeros(o, prec, result);
      result.flush("", out);
      return 0;
    } else if (count->parsed()) {
      cmd_series({need_T(o)}, o, prec, result);
    } else if (series->parsed()) {
      cmd_series(grid, o, prec, result);
    } else if (lemma->parsed()) {
      cmd_lemma(o, prec, result);
    } else if (split->parsed()) {
      cmd_delta_split(o, prec, result);
    } else if (dyadic->parsed()) {
      cmd_dyadic(o, prec, result);
    } else if (calib->parsed()) {
      const ZeroData zd = zero_data_for(o.cache, Rational(kCalibrationHeight), prec);
      result.raw(calibrate(zd, prec, o.seed).serialize());
    }
    result.flush(o.out, out);
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.name() << "\n" << e.what() << "\n";
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: IoError\n" << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace zpl
