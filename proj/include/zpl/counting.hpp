#pragma once

#include "zpl/zero_finder.hpp"

#include <memory>
#include <string>
#include <vector>

namespace zpl {

/// (T/2π) log(T/4πe), the smooth count of zeros of ζ'.
double main_term_N1(double T);
RealBall main_term_N1(const RealBall& T);
/// (T/2π) log(T/2πe), the smooth count of zeros of ζ.
double main_term_N(double T);
RealBall main_term_N(const RealBall& T);
/// θ(T)/π + 1: N(T) - S(T) in the Riemann–von Mangoldt formula.
double smooth_count_N(double T);

/// Zero lists for ζ' (window enumeration) and ζ (critical line).
struct ZeroData {
  Isolation zeta_prime;
  CriticalZeros critical;

  /// Heights up to which each list is complete.
  Rational zeta_prime_top() const { return zeta_prime.rect.t_hi(); }
  Rational critical_top() const { return critical.T; }
};

ZeroData compute_zero_data(const Rational& T, Precision prec);

/// Counts by enumeration: zeros of ζ' with 0 < γ' <= T, β' > 0, with
/// multiplicity; and critical ordinates 0 < γ <= T.
int n1_enumerated(const Isolation& zeros, const Rational& T);
int n_enumerated(const CriticalZeros& zeros, const Rational& T);

struct CountResult {
  int enumerated = 0;
  int winding = 0;
  Rational T_used;
  int nudges = 0;
};

/// Count at T by enumeration and by the winding number of the window;
/// T is nudged upward by 2^-20·(1+retry) when it sits on an ordinate.
/// Throws CountMismatch if the two disagree.
CountResult count_N1(const Rational& T, const Isolation& zeros, SegmentTracker& zeta_prime_tracker);
CountResult count_N(const Rational& T, const CriticalZeros& zeros, SegmentTracker& zeta_tracker);
/// Self-contained versions that enumerate first.
int count_N1(const Rational& T, Precision prec);
int count_N(const Rational& T, Precision prec);

struct CountReport {
  Rational T;       // height actually used (after nudging)
  int nudges = 0;
  int n1_enum = 0;
  int n_enum = 0;
  double main1 = 0;
  double main0 = 0;
  double argG = 0;
  double argZ = 0;
  double arg_rad = 0;
  /// n1_enum - main1 - (argG + argZ)/2π
  double lemma1_residual = 0;
};

/// Shared evaluation caches for repeated reports.
struct ArgContext {
  explicit ArgContext(Precision prec)
      : G(TrackedFunction::G, prec), zeta(TrackedFunction::zeta, prec)
  {
  }
  SegmentTracker G;
  SegmentTracker zeta;
};

/// Full count report at T. T must not be an ordinate of ζ or ζ'; it is
/// nudged up to three times, then ZeroAtEndpoint.
CountReport lemma1_residual(const Rational& T, const ZeroData& zeros, ArgContext& ctx);

/// Closed-form reference curve Φ(T) in a small grammar: numbers, T, + - * /
/// ^, parentheses, log(), sqrt(), exp().
class PhiCurve {
 public:
  static PhiCurve parse(const std::string& text);
  double operator()(double T) const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

inline constexpr const char* kDefaultPhi = "sqrt(log(T)*log(log(T)))";

struct ErrorRow {
  CountReport report;
  double e1 = 0;
  double e0 = 0;
  double r_lit = 0;   // log T / log log T
  double r_aka = 0;   // log T / sqrt(log log T)
  double r_phi = 0;
};

struct ErrorSeries {
  std::vector<ErrorRow> rows;
  std::string phi;
};

/// Grid must be strictly increasing.
ErrorSeries error_series(const std::vector<Rational>& grid, const ZeroData& zeros, ArgContext& ctx,
                         const PhiCurve& phi);

struct DyadicLevel {
  int j = 0;
  double Y = 0;
  Region rect;           // (1/2, 1/2 + Y_j] × [T - Y_j, T + Y_j], outward to the grid
  int winding_R = 0;     // zeros of ζ' in R_j by winding number
  int enumerated_R = 0;  // same by enumeration
  int N_U = 0;           // zeros in U_j = R_j - R_{j-1}
  double sum = 0;        // Σ_j of f_X over U_j
};

struct DyadicReport {
  double T = 0;
  double X = 0;
  double g = 0;
  int k = 0;
  std::vector<DyadicLevel> levels;
  double sum_line = 0;   // zeros with β' = 1/2, |γ' - T| <= Y_k
  double sum_rest = 0;   // remaining zeros of the disk
  double sum_total = 0;  // Σ over the disk of radius 5 about 1/2 + X/2 + iT
};

struct DyadicParams {
  double X = 0;
  double g = 0;
  int k = 0;
};

/// X = 1/sqrt(log T), g = e, k = floor(log log T / 2) + 1.
DyadicParams default_dyadic_params(double T);

/// Y_j = X g^j for j = 1..k.
std::vector<double> dyadic_heights(const DyadicParams& p);

DyadicReport dyadic_regions(double T, const DyadicParams& p, const Isolation& zeros,
                            SegmentTracker& zeta_prime_tracker);

/// Signed angle at rho subtended by the segment from b to a, i.e. the
/// continuous change of arg(s - rho) as s runs from b to a; in (-π, π).
double subtended_angle(double a_sigma, double a_t, double b_sigma, double b_t, double rho_sigma,
                       double rho_t);

/// Whether the zero's box straddles σ = 1/2.
bool on_critical_line(const IsolatedZero& z);

}  // namespace zpl
