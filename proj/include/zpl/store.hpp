#pragma once

#include "zpl/counting.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace zpl {

/// A zero list on disk. Text format:
///   #zetaprime-lab zeros v1 f=<zeta|zetaprime> prec=<bits>
///   #covered <sigma_lo> <sigma_hi> <t_lo> <t_hi>
///   #winding <count>
///   n beta gamma beta_rad gamma_rad mult
/// All numbers are decimal strings; records sorted by gamma then beta.
struct ZeroCache {
  static constexpr int kVersion = 1;

  TrackedFunction f = TrackedFunction::zeta_prime;
  int version = kVersion;
  int prec_bits = 192;
  Region covered;
  int winding = 0;
  std::vector<IsolatedZero> zeros;

  int multiplicity_sum() const;
};

ZeroCache to_cache(const Isolation& iso, int prec_bits);
ZeroCache to_cache(const CriticalZeros& crit, int prec_bits);
Isolation to_isolation(const ZeroCache& cache);
CriticalZeros to_critical(const ZeroCache& cache);

std::string serialize(const ZeroCache& cache);
ZeroCache parse_cache(const std::string& text);

/// Union of two caches of the same function and format whose covered
/// rectangles share the σ range and overlap or abut in t. Overlapping boxes
/// are treated as one zero and the smaller box is kept.
ZeroCache cache_merge(const ZeroCache& a, const ZeroCache& b);

/// Writes through a temporary file and a rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

void write_cache(const std::filesystem::path& path, const ZeroCache& cache);
ZeroCache read_cache(const std::filesystem::path& path);

/// <dir>/zetaprime.zeros and <dir>/zeta.zeros.
std::filesystem::path cache_path(const std::filesystem::path& dir, TrackedFunction f);

/// Both lists from a cache directory; a missing file is an
/// InsufficientZeroWindow.
ZeroData load_zero_data(const std::filesystem::path& dir);

/// Line-oriented `key value` pairs; '#' starts a comment line.
class Calibration {
 public:
  static Calibration parse(const std::string& text);
  static Calibration load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  /// Throws ParseError for a missing key.
  double get(const std::string& key) const;
  void set(const std::string& key, double value);
  std::string serialize() const;
  void save(const std::filesystem::path& path) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

/// Shortest round-trip decimal of a double, locale independent.
std::string format_double(double x);

std::string counts_csv(const ErrorSeries& series);
std::string trace_csv(const ArgTrace& trace);

}  // namespace zpl
