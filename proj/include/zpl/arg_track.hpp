#pragma once

#include "zpl/ball.hpp"
#include "zpl/geometry.hpp"
#include "zpl/precision.hpp"

#include <map>
#include <string_view>
#include <utility>
#include <vector>

namespace zpl {

/// Functions whose argument can be followed along a path.
enum class TrackedFunction {
  zeta,          // ζ(s)
  zeta_prime,    // ζ'(s)
  G,             // -2^s / log 2 · ζ'(s)
  G_zeta_ratio,  // -2^s / log 2 · ζ'(s)/ζ(s)
};

std::string_view function_name(TrackedFunction f);

/// Certified value plus a floating estimate of |f'/f| used for step control.
struct FunctionValue {
  CertifiedComplex value;
  double log_derivative_mag = 0;
};

/// Evaluates f at p, escalating precision while the enclosure contains 0.
/// Throws ZeroOnPath when the ceiling is reached.
FunctionValue evaluate_tracked(TrackedFunction f, const Point& p, Precision prec);

/// Step control along a segment. Steps are dyadic fractions of the
/// segment; `initial_step` and `max_step` are absolute lengths.
struct StepPolicy {
  double initial_step = 0.125;
  double max_step = 0.5;
  /// A step of length h is accepted only if h·|f'/f| stays below this
  /// at both ends.
  double max_log_derivative_step = 0.5;
  int max_bisections = 64;

  /// Every length and threshold halved, for refinement checks.
  StepPolicy halved() const;
};

struct ArgSample {
  Point point;
  double arg = 0;   // continuous argument at the point
  double rad = 0;   // accumulated certified radius
};

struct SegmentResult {
  double change = 0;
  double rad = 0;
  /// Largest certified |increment| + radius over accepted steps.
  double max_step_arg = 0;
  std::size_t steps = 0;
  /// Sample points including both ends; arguments relative to the start.
  std::vector<ArgSample> samples;
};

/// Follows arg f along segments. Function values and whole segments are
/// memoised so that shared edges (subdivision, refinement) are evaluated
/// once; a segment traversed backwards reuses the forward result.
class SegmentTracker {
 public:
  SegmentTracker(TrackedFunction f, Precision prec, StepPolicy policy = {});

  TrackedFunction function() const { return f_; }
  Precision precision() const { return prec_; }
  const StepPolicy& policy() const { return policy_; }

  const FunctionValue& value_at(const Point& p);
  const SegmentResult& track(const Segment& seg);

  std::size_t evaluations() const { return values_.size(); }

 private:
  SegmentResult compute(const Segment& seg);

  TrackedFunction f_;
  Precision prec_;
  StepPolicy policy_;
  std::map<Point, FunctionValue> values_;
  std::map<std::pair<Point, Point>, SegmentResult> segments_;
};

/// A path with the continuous argument sampled along it.
struct ArgTrace {
  Path path;
  std::vector<ArgSample> samples;
  double start_arg = 0;
  double total_change = 0;
  double total_rad = 0;
  double max_step_arg = 0;

  double end_arg() const { return start_arg + total_change; }
};

ArgTrace arg_continuous(SegmentTracker& tracker, const Path& path, double start_arg);
ArgTrace arg_continuous(TrackedFunction f, const Path& path, double start_arg, Precision prec,
                        StepPolicy policy = {});

/// Certified argument value with its radius.
struct ArgValue {
  double value = 0;
  double rad = 0;
};

/// Starting abscissa where the certified Dirichlet tail pins the argument
/// of f within 1e-6 of 0.
int anchor_sigma(TrackedFunction f);
/// Upper bound on |arg f(σ + it)| for σ >= anchor_sigma(f).
double anchor_bound(TrackedFunction f, double sigma);

/// arg f(1/2 + iT) by continuous variation from the anchor abscissa.
/// Throws ZeroAtEndpoint when f vanishes (numerically) at 1/2 + iT.
ArgValue arg_at_half(TrackedFunction f, const Rational& T, Precision prec, StepPolicy policy = {});
ArgValue arg_at_half(SegmentTracker& tracker, const Rational& T);

/// 1/2 + (log log T)^2 / log T as an exact rational near the real value.
Rational split_sigma(const Rational& T, Precision prec);

struct DeltaSplit {
  Rational T;
  Rational sigma_split;
  /// Change of arg G from +inf to sigma_split + iT (anchor included).
  double delta1 = 0;
  /// Change of arg G from sigma_split + iT leftward to 1/2 + iT.
  double delta2 = 0;
  double rad1 = 0;
  double rad2 = 0;
};

DeltaSplit delta_split(const Rational& T, Precision prec, StepPolicy policy = {});
DeltaSplit delta_split(SegmentTracker& tracker, const Rational& T);

struct ProbeResult {
  double value = 0;
  double rad = 0;
  double ratio = 0;
  /// Whether sigma lies in 1/2 + (log log T)^2/log T <= sigma <= 3/4.
  bool in_lemma_range = false;
};

/// arg G(σ + iT) and its ratio to (log T)^{2(1-σ)} / log log T. Requires σ > 1/2.
ProbeResult probe_arg_G_far(const Rational& T, const Rational& sigma, Precision prec);

/// arg(-2^s/log 2 · ζ'/ζ(s)) at s = σ + iT and its ratio to
/// log log T / (σ - 1/2). Requires 1/2 < σ < 20.
ProbeResult probe_arg_Gzeta_ratio(const Rational& T, const Rational& sigma, Precision prec);

}  // namespace zpl
