#pragma once

#include "zpl/store.hpp"

#include <ostream>
#include <vector>

namespace zpl {

/// lo:hi:step into lo, lo + step, ... <= hi. Throws ParseError.
std::vector<Rational> parse_grid(const std::string& text);

/// Calibration grids shared by `calibrate` and the acceptance checks.
std::vector<Rational> lemma1_grid();    // 50.5 + 9i, i < 50
std::vector<Rational> lemma6_grid();    // 50.25 + 9i, i < 50
std::vector<Rational> disk_split_grid();  // 50.3 + 22.5i, i < 20
/// 30 points (σ, t) with σ in [-1, 2] and t in [20, 480], from `seed`.
std::vector<std::pair<Rational, Rational>> lemma4_points(unsigned long seed);

inline constexpr int kGapCount = 100;
inline constexpr double kGapWindow = 30;
inline constexpr double kLemma6Window = 20;
/// Height to which `calibrate` enumerates zeros.
inline constexpr int kCalibrationHeight = 520;

/// Zero lists from `dir` when they reach `height`; otherwise computed,
/// written to `dir` and returned.
ZeroData zero_data_for(const std::filesystem::path& dir, const Rational& height, Precision prec);

/// Runs every calibration measurement against the zero lists in `zeros`.
Calibration calibrate(const ZeroData& zeros, Precision prec, unsigned long seed);

/// Exit status: 0 success, 1 computation error (its name on `err`),
/// 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zpl
