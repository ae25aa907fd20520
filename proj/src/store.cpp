#include "zpl/store.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace zpl {

namespace {

constexpr const char* kMagic = "#zetaprime-lab";

// Decimal text for a centre. Values with a terminating expansion are
// written exactly; others are rounded to 40 places and the caller widens
// the radius by `slack`.
std::string centre_text(const Rational& x, Rational& slack)
{
  std::string s = exact_string(x);
  if (s.find('/') == std::string::npos) return s;
  mpz_class ten40;
  mpz_ui_pow_ui(ten40.get_mpz_t(), 10, 40);
  slack = Rational(1, 1) / Rational(ten40);
  return fixed_string(x, 40);
}

std::string radius_text(const Rational& r)
{
  std::string s = exact_string(r);
  if (s.find('/') == std::string::npos) return s;
  return scientific_string_up(r, 12);
}

// Enclosing box; a zero known to lie exactly on a vertical line gets the
// t half-width in σ as well.
Region box_of(const Rational& b, const Rational& g, const Rational& br, const Rational& gr)
{
  const Rational w = sgn(br) > 0 ? br : gr;
  return Region::rectangle(b - w, b + w, g - gr, g + gr);
}

std::vector<std::string> split_ws(const std::string& line)
{
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

bool boxes_overlap(const Region& a, const Region& b)
{
  return a.sigma_lo() <= b.sigma_hi() && b.sigma_lo() <= a.sigma_hi() && a.t_lo() <= b.t_hi() &&
         b.t_lo() <= a.t_hi();
}

}  // namespace

int ZeroCache::multiplicity_sum() const
{
  int n = 0;
  for (const auto& z : zeros) n += z.multiplicity;
  return n;
}

ZeroCache to_cache(const Isolation& iso, int prec_bits)
{
  ZeroCache c;
  c.f = iso.f;
  c.prec_bits = prec_bits;
  c.covered = iso.rect;
  c.winding = iso.winding_total;
  c.zeros = iso.zeros;
  std::sort(c.zeros.begin(), c.zeros.end(), zero_order);
  return c;
}

ZeroCache to_cache(const CriticalZeros& crit, int prec_bits)
{
  ZeroCache c;
  c.f = TrackedFunction::zeta;
  c.prec_bits = prec_bits;
  c.covered = zeta_window(crit.T);
  c.winding = crit.winding;
  const Rational half(1, 2);
  for (const auto& z : crit.zeros) {
    IsolatedZero iz;
    iz.beta = half;
    iz.gamma = z.gamma;
    iz.beta_rad = 0;
    iz.gamma_rad = z.rad;
    iz.box = box_of(half, z.gamma, 0, z.rad);
    c.zeros.push_back(iz);
  }
  return c;
}

Isolation to_isolation(const ZeroCache& cache)
{
  if (cache.f != TrackedFunction::zeta_prime) {
    throw Error(ErrorCode::IncompatibleCaches, "expected a cache of zeta' zeros");
  }
  Isolation iso;
  iso.f = cache.f;
  iso.rect = cache.covered;
  iso.winding_total = cache.winding;
  iso.zeros = cache.zeros;
  return iso;
}

CriticalZeros to_critical(const ZeroCache& cache)
{
  if (cache.f != TrackedFunction::zeta) throw Error(ErrorCode::IncompatibleCaches, "expected a cache of zeta zeros");
  CriticalZeros c;
  c.T = cache.covered.t_hi();
  c.winding = cache.winding;
  int index = 0;
  for (const auto& z : cache.zeros) {
    if (z.beta != Rational(1, 2)) {
      throw Error(ErrorCode::ParseError, "zeta cache record off the critical line: " + exact_string(z.beta));
    }
    c.zeros.push_back(CriticalZero{++index, z.gamma, z.gamma_rad});
  }
  return c;
}

std::string serialize(const ZeroCache& cache)
{
  std::ostringstream out;
  out << kMagic << " zeros v" << cache.version << " f=" << function_name(cache.f) << " prec=" << cache.prec_bits
      << "\n";
  const Region& r = cache.covered;
  out << "#covered " << exact_string(r.sigma_lo()) << ' ' << exact_string(r.sigma_hi()) << ' '
      << exact_string(r.t_lo()) << ' ' << exact_string(r.t_hi()) << "\n";
  out << "#winding " << cache.winding << "\n";
  int n = 0;
  for (const auto& z : cache.zeros) {
    Rational sb = 0, sg = 0;
    const std::string b = centre_text(z.beta, sb);
    const std::string g = centre_text(z.gamma, sg);
    out << ++n << ' ' << b << ' ' << g << ' ' << radius_text(z.beta_rad + sb) << ' '
        << radius_text(z.gamma_rad + sg) << ' ' << z.multiplicity << "\n";
  }
  return out.str();
}

ZeroCache parse_cache(const std::string& text)
{
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::ParseError, "empty zero cache");
  const auto head = split_ws(line);
  if (head.size() != 5 || head[0] != kMagic || head[1] != "zeros") {
    throw Error(ErrorCode::ParseError, "not a zero cache: '" + line + "'");
  }
  ZeroCache c;
  if (head[2] != "v1") throw Error(ErrorCode::IncompatibleCaches, "unsupported cache version " + head[2]);
  if (head[3] == "f=zeta") {
    c.f = TrackedFunction::zeta;
  } else if (head[3] == "f=zetaprime") {
    c.f = TrackedFunction::zeta_prime;
  } else {
    throw Error(ErrorCode::ParseError, "unknown function tag " + head[3]);
  }
  if (head[4].rfind("prec=", 0) != 0) throw Error(ErrorCode::ParseError, "missing prec= in header");
  try {
    c.prec_bits = std::stoi(head[4].substr(5));
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "bad precision " + head[4]);
  }

  bool have_cover = false, have_winding = false;
  int expect = 1;
  while (std::getline(in, line)) {
    const auto w = split_ws(line);
    if (w.empty()) continue;
    if (w[0] == "#covered") {
      if (w.size() != 5) throw Error(ErrorCode::ParseError, "bad #covered line");
      c.covered = Region::rectangle(parse_rational(w[1]), parse_rational(w[2]), parse_rational(w[3]),
                                    parse_rational(w[4]));
      have_cover = true;
      continue;
    }
    if (w[0] == "#winding") {
      if (w.size() != 2) throw Error(ErrorCode::ParseError, "bad #winding line");
      c.winding = std::stoi(w[1]);
      have_winding = true;
      continue;
    }
    if (w[0][0] == '#') continue;
    if (w.size() != 6) throw Error(ErrorCode::ParseError, "record needs 6 fields: '" + line + "'");
    if (w[0] != std::to_string(expect)) throw Error(ErrorCode::ParseError, "record out of sequence: " + w[0]);
    ++expect;
    IsolatedZero z;
    z.beta = parse_rational(w[1]);
    z.gamma = parse_rational(w[2]);
    z.beta_rad = parse_rational(w[3]);
    z.gamma_rad = parse_rational(w[4]);
    z.multiplicity = std::stoi(w[5]);
    if (z.multiplicity < 1) throw Error(ErrorCode::ParseError, "multiplicity must be positive");
    z.box = box_of(z.beta, z.gamma, z.beta_rad, z.gamma_rad);
    c.zeros.push_back(z);
  }
  if (!have_cover || !have_winding) throw Error(ErrorCode::ParseError, "cache lacks #covered or #winding");
  if (!std::is_sorted(c.zeros.begin(), c.zeros.end(), zero_order)) {
    throw Error(ErrorCode::ParseError, "records not sorted by gamma then beta");
  }
  return c;
}

ZeroCache cache_merge(const ZeroCache& a, const ZeroCache& b)
{
  if (a.f != b.f || a.version != b.version) {
    throw Error(ErrorCode::IncompatibleCaches, "caches differ in function tag or format version");
  }
  const Region& ra = a.covered;
  const Region& rb = b.covered;
  if (ra.sigma_lo() != rb.sigma_lo() || ra.sigma_hi() != rb.sigma_hi()) {
    throw Error(ErrorCode::IncompatibleCaches, "covered rectangles differ in sigma range");
  }
  if (ra.t_hi() < rb.t_lo() || rb.t_hi() < ra.t_lo()) {
    throw Error(ErrorCode::IncompatibleCaches, "covered rectangles neither overlap nor abut");
  }
  ZeroCache m;
  m.f = a.f;
  m.version = a.version;
  m.prec_bits = std::max(a.prec_bits, b.prec_bits);
  m.covered = Region::rectangle(ra.sigma_lo(), ra.sigma_hi(), std::min(ra.t_lo(), rb.t_lo()),
                                std::max(ra.t_hi(), rb.t_hi()));
  m.zeros = a.zeros;
  for (const auto& z : b.zeros) {
    auto same = std::find_if(m.zeros.begin(), m.zeros.end(),
                             [&](const IsolatedZero& y) { return boxes_overlap(y.box, z.box); });
    if (same == m.zeros.end()) {
      m.zeros.push_back(z);
    } else if (z.box.width() * z.box.height() < same->box.width() * same->box.height()) {
      *same = z;
    }
  }
  std::sort(m.zeros.begin(), m.zeros.end(), zero_order);
  m.winding = m.multiplicity_sum();
  return m;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content)
{
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(ErrorCode::IoError, "rename to " + path.string() + ": " + ec.message());
  }
}

std::string read_file(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_cache(const std::filesystem::path& path, const ZeroCache& cache)
{
  write_file_atomic(path, serialize(cache));
}

ZeroCache read_cache(const std::filesystem::path& path) { return parse_cache(read_file(path)); }

std::filesystem::path cache_path(const std::filesystem::path& dir, TrackedFunction f)
{
  return dir / (std::string(function_name(f)) + ".zeros");
}

ZeroData load_zero_data(const std::filesystem::path& dir)
{
  ZeroData d;
  for (TrackedFunction f : {TrackedFunction::zeta_prime, TrackedFunction::zeta}) {
    const auto p = cache_path(dir, f);
    if (!std::filesystem::exists(p)) {
      throw Error(ErrorCode::InsufficientZeroWindow, "no zero cache at " + p.string());
    }
  }
  d.zeta_prime = to_isolation(read_cache(cache_path(dir, TrackedFunction::zeta_prime)));
  d.critical = to_critical(read_cache(cache_path(dir, TrackedFunction::zeta)));
  return d;
}

Calibration Calibration::parse(const std::string& text)
{
  Calibration c;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto w = split_ws(line);
    if (w.empty() || w[0][0] == '#') continue;
    if (w.size() != 2) throw Error(ErrorCode::ParseError, "calibration line needs key and value: '" + line + "'");
    c.values_[w[0]] = w[1];
  }
  return c;
}

Calibration Calibration::load(const std::filesystem::path& path) { return parse(read_file(path)); }

double Calibration::get(const std::string& key) const
{
  const auto it = values_.find(key);
  if (it == values_.end()) throw Error(ErrorCode::ParseError, "calibration key missing: " + key);
  double v = 0;
  const auto [ptr, ec] = std::from_chars(it->second.data(), it->second.data() + it->second.size(), v);
  if (ec != std::errc() || ptr != it->second.data() + it->second.size()) {
    throw Error(ErrorCode::ParseError, "bad calibration value for " + key);
  }
  return v;
}

void Calibration::set(const std::string& key, double value) { values_[key] = format_double(value); }

std::string Calibration::serialize() const
{
  std::string out;
  for (const auto& [k, v] : values_) out += k + " " + v + "\n";
  return out;
}

void Calibration::save(const std::filesystem::path& path) const { write_file_atomic(path, serialize()); }

std::string format_double(double x)
{
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string counts_csv(const ErrorSeries& series)
{
  std::string out = "T,n1,n,main1,main0,argG,argZ,residual,e1,e0,r_lit,r_aka,r_phi\n";
  for (const auto& row : series.rows) {
    const auto& r = row.report;
    out += exact_string(r.T) + "," + std::to_string(r.n1_enum) + "," + std::to_string(r.n_enum) + "," +
           format_double(r.main1) + "," + format_double(r.main0) + "," + format_double(r.argG) + "," +
           format_double(r.argZ) + "," + format_double(r.lemma1_residual) + "," + format_double(row.e1) + "," +
           format_double(row.e0) + "," + format_double(row.r_lit) + "," + format_double(row.r_aka) + "," +
           format_double(row.r_phi) + "\n";
  }
  return out;
}

std::string trace_csv(const ArgTrace& trace)
{
  std::string out = "sigma,t,arg_mid,arg_rad\n";
  for (const auto& s : trace.samples) {
    out += exact_string(s.point.sigma) + "," + exact_string(s.point.t) + "," + format_double(s.arg) +
           "," + format_double(s.rad) + "\n";
  }
  return out;
}

}  // namespace zpl
