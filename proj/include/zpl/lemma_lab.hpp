#pragma once

#include "zpl/counting.hpp"

#include <vector>

namespace zpl {

// F1(t) = Σ_{β' > 1/2} (β' - 1/2) / ((β' - 1/2)^2 + (γ' - t)^2), summed over
// the zeros of ζ' and their conjugates.

/// Largest Σ (β' - 1/2) / log(k + 2) over unit intervals [k, k+1) of
/// ordinates in the list; the density constant of the F1 tail.
double f1_density_constant(const Isolation& zeros);

struct F1Value {
  double t = 0;
  double U = 0;
  double core = 0;        // exact sum over |γ' - t| <= U
  double tail_bound = 0;  // 2 c log(t + U) / U
  double lo() const { return core; }
  double hi() const { return core + tail_bound; }
};

/// Requires U >= 1 and a zero list reaching t + U.
F1Value f1_eval(double t, double U, const Isolation& zeros);

struct GapIntegral {
  int n = 0;
  double gamma_lo = 0;  // γ_n
  double gamma_hi = 0;  // γ_{n+1}
  double in_window = 0;  // Σ of arctan differences over |γ' - gap| <= U
  double tail = 0;       // (γ_{n+1} - γ_n) · F1 tail bound
  double lo() const { return in_window; }
  double hi() const { return in_window + tail; }
};

/// ∫ over [a, b] of F1 restricted to zeros with γ' in [a - U, b + U], by the
/// arctan antiderivative of each summand.
double f1_window_integral(double a, double b, double U, const Isolation& zeros);

/// ∫_{γ_n}^{γ_{n+1}} F1(t) dt for 1-based n.
GapIntegral gap_integral(int n, const CriticalZeros& critical, const Isolation& zeros, double U);

/// Angle at ρ' = β' + iγ' subtended by 1/2 + i(T - H) and 1/2 + i(T + H):
/// arctan((T + H - γ')/a) - arctan((T - H - γ')/a) with a = β' - 1/2.
/// Throws BetaOnLine when β' = 1/2 (within the box for IsolatedZero).
double theta_angle(double beta, double gamma, double T, double H);
double theta_angle(const IsolatedZero& z, double T, double H);

/// (log log T)^3 / log T.
double lemma6_height(double T);

struct Lemma6Report {
  double T = 0;
  double H = 0;
  double I_lo = 0;  // ∫_{T-H}^{T+H} F1, certified range
  double I_hi = 0;
  int n1_R = 0;     // zeros of ζ' in (1/2, 1/2 + H] × [T - H, T + H]
  int nd = 0;       // distinct critical ordinates in [T - H, T + H]
  double ratio = 0;  // n1_R / (nd + 1)
  double theta_sum = 0;
  double theta_min = 0;  // smallest θ(ρ') over the zeros of the rectangle
  double corner_min = 0;  // smallest θ over the corners of the rectangle
};

Lemma6Report lemma6_report(double T, const ZeroData& zeros, double U = 20);

struct Lemma4Report {
  Rational sigma;
  Rational t;
  double L_re = 0;  // ζ''/ζ'(s)
  double L_im = 0;
  double L_rad = 0;
  double residual = 0;       // |L - Σ_{|ρ'-s|<5} 1/(s - ρ')| / log t
  double residual_disk = 0;  // same with the disk about 1/2 + H/(2 log log t) + it
  int n_circle = 0;
  int n_disk = 0;
  /// |(S_disk - S_circle) - (Σ_{disk∖circle} - Σ_{circle∖disk})|.
  double identity_error = 0;
  double identity_rad = 0;
};

/// Requires -1 <= σ <= 2, t >= 6 and the zero list to reach t + 5.
/// DenominatorZero when s lies within 1e-10 of a listed zero or the
/// enclosure of ζ'(s) contains 0.
Lemma4Report lemma4_residual(const Rational& sigma, const Rational& t, const Isolation& zeros, Precision prec);

struct DiskSumReport {
  double T = 0;
  double H = 0;
  double X = 0;  // H / log log T
  Region disk;
  std::vector<double> f;  // per zero of the disk
  double sum1 = 0;        // zeros in (1/2, 1/2 + H] × [T - H, T + H]
  double sum2 = 0;        // zeros on σ = 1/2 with |γ' - T| <= H
  double sum3 = 0;        // the rest of the disk
  double sum_all = 0;
  double regroup_error = 0;
  double kappa = 0;         // log log T · max angle over the Σ3 region
  double max_f3 = 0;        // largest |f| among Σ3 zeros
  double delta1 = 0;
  double delta2 = 0;        // leftward change of arg G from 1/2 + X + iT to 1/2 + iT
  double delta_rad = 0;
  double argG = 0;          // arg G(1/2 + iT) by an independent trace
  double argG_rad = 0;
  double residual = 0;      // (-delta2) - sum_all
  double normalized = 0;    // residual / (log log T)^2
};

/// Sums over the zero list only; delta and argG fields are left at 0.
DiskSumReport disk_sums(double T, const std::vector<IsolatedZero>& zeros);

/// Full report including Δ1, Δ2 and arg G(1/2 + iT).
DiskSumReport disk_sum_report(const Rational& T, const Isolation& zeros, SegmentTracker& G_tracker);

/// Largest angle subtended by [1/2, 1/2 + X] (at height T) from a point of
/// {σ >= 1/2} outside (1/2, 1/2 + H] × [T - H, T + H], found on its boundary.
double sigma3_max_angle(double H, double X);

}  // namespace zpl
