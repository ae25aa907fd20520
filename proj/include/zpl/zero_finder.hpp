#pragma once

#include "zpl/arg_track.hpp"

#include <vector>

namespace zpl {

/// Edges are placed on this dyadic grid and shifted by multiples of its
/// spacing when a zero sits on them.
inline constexpr int kGridBits = 40;

/// Lower edge used for windows that nominally start at t = 0 or σ = 0.
Rational grid_epsilon();

struct WindingResult {
  int count = 0;
  /// The rectangle actually used, after any boundary perturbation.
  Region rect;
  double total_change = 0;
  double rad = 0;
  int retries = 0;
};

/// Winding number of f around the counterclockwise boundary of rect.
/// Vertical edges are cut at even ordinates so that overlapping
/// rectangles share evaluations. On a zero near an edge the edge is moved
/// outward by 2^-40·(1+retry); after three retries ZeroOnBoundary.
WindingResult winding_count(SegmentTracker& tracker, const Region& rect);
int winding_count(TrackedFunction f, const Region& rect, Precision prec);

/// As above without perturbation; ZeroOnPath propagates.
WindingResult winding_count_strict(SegmentTracker& tracker, const Region& rect);

/// A certified isolating box for a zero of ζ or ζ'.
struct IsolatedZero {
  Region box;
  /// Box centre: the refined approximation β + iγ.
  Rational beta;
  Rational gamma;
  /// Half-widths of the box in σ and t.
  Rational beta_rad;
  Rational gamma_rad;
  int multiplicity = 1;
  /// Multiplicity > 1 and the box could not be split below 1e-15.
  bool cluster_unresolved = false;

  double beta_d() const { return to_double(beta); }
  double gamma_d() const { return to_double(gamma); }
  /// Certified lower bound on the real part, as a double rounded down.
  double beta_lower() const;
};

/// Sorted by γ then β.
bool zero_order(const IsolatedZero& a, const IsolatedZero& b);

struct Isolation {
  TrackedFunction f = TrackedFunction::zeta_prime;
  Region rect;
  int winding_total = 0;
  std::vector<IsolatedZero> zeros;
  int multiplicity_sum() const;
};

/// Disjoint isolating boxes whose multiplicities add up to the winding
/// number of rect; each box is at most 2^-67 wide.
Isolation isolate_zeros(SegmentTracker& tracker, const Region& rect);
Isolation isolate_zeros(TrackedFunction f, const Region& rect, Precision prec);

/// Abscissa σ_R beyond which ζ' has no zeros, from the certified
/// inequality log 2 / 2^σ > Σ_{n>=3} log n / n^σ (on a 1/16 grid).
Rational sigma_right();

/// All zeros of ζ' in (2^-40, σ_R] × (2^-40, T], found strip by strip.
Isolation enumerate_zeta_prime(const Rational& T, Precision prec);
Isolation enumerate_zeta_prime(SegmentTracker& tracker, const Rational& T);

/// The window above as a rectangle.
Region zeta_prime_window(const Rational& T);
/// [-1, 2] × (2^-40, T], the window for zeros of ζ.
Region zeta_window(const Rational& T);

struct CriticalZero {
  int index = 0;
  Rational gamma;
  /// Half-width of the certified bracket.
  Rational rad;

  double gamma_d() const { return to_double(gamma); }
};

struct CriticalZeros {
  Rational T;
  std::vector<CriticalZero> zeros;
  /// Winding number of ζ around zeta_window(T).
  int winding = 0;
};

/// Ordinates 0 < γ_n <= T of zeros of ζ on the critical line, bracketed by
/// sign changes of Hardy's Z to width <= 2^-68 and checked for
/// completeness against the winding number.
CriticalZeros critical_zeros_up_to(const Rational& T, Precision prec);

struct NdCount {
  double T = 0;
  double H = 0;
  int count = 0;
};

/// Distinct ordinates in [T - H, T + H]. Throws InsufficientZeroWindow when
/// the list does not reach T + H.
NdCount nd_count(const CriticalZeros& zeros, double T, double H);

}  // namespace zpl
