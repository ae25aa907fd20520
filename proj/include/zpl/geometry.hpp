#pragma once

#include "zpl/rational.hpp"

#include <string>
#include <vector>

namespace zpl {

/// A point σ + it of the s-plane with exact coordinates. Comparisons go
/// through cmp(), which (unlike mpq ==) does not need canonical operands.
struct Point {
  Rational sigma;
  Rational t;

  friend bool operator==(const Point& a, const Point& b) { return cmp(a.sigma, b.sigma) == 0 && cmp(a.t, b.t) == 0; }
  friend bool operator<(const Point& a, const Point& b)
  {
    if (const int c = cmp(a.t, b.t); c != 0) return c < 0;
    return cmp(a.sigma, b.sigma) < 0;
  }
};

/// Point a + u·(b - a) for rational u.
Point lerp(const Point& a, const Point& b, const Rational& u);

struct Segment {
  Point a;
  Point b;

  bool degenerate() const { return a == b; }
  double length() const;
  Segment reversed() const { return {b, a}; }
};

/// Chain of segments; consecutive segments share endpoints.
class Path {
 public:
  Path() = default;
  explicit Path(std::vector<Segment> segments);

  /// Horizontal segment from sigma_from + it to sigma_to + it.
  static Path horizontal(const Rational& sigma_from, const Rational& sigma_to, const Rational& t);
  /// Polyline through the given vertices.
  static Path polyline(const std::vector<Point>& vertices);

  const std::vector<Segment>& segments() const { return segments_; }
  bool empty() const { return segments_.empty(); }
  bool closed() const;
  Point start() const;
  Point end() const;
  /// This path followed by `other`; their junction must coincide.
  Path then(const Path& other) const;

 private:
  std::vector<Segment> segments_;
};

enum class RegionKind { rectangle, disk };

/// Axis-aligned rectangle or disk with exact rational data.
class Region {
 public:
  static Region rectangle(Rational sigma_lo, Rational sigma_hi, Rational t_lo, Rational t_hi);
  static Region disk(Rational center_sigma, Rational center_t, Rational radius);

  RegionKind kind() const { return kind_; }
  const Rational& sigma_lo() const { return a_; }
  const Rational& sigma_hi() const { return b_; }
  const Rational& t_lo() const { return c_; }
  const Rational& t_hi() const { return d_; }
  const Rational& center_sigma() const { return a_; }
  const Rational& center_t() const { return c_; }
  const Rational& radius() const { return b_; }

  /// Rectangle: closed membership. Disk: open membership (|z - c| < r).
  bool contains(const Rational& sigma, const Rational& t) const;
  bool contains(double sigma, double t) const;

  /// Counterclockwise boundary starting at the lower-left corner
  /// (rectangles only).
  Path boundary() const;

  /// The four quadrants obtained by cutting at (sigma_mid, t_mid):
  /// lower-left, lower-right, upper-left, upper-right.
  std::vector<Region> quadrants(const Rational& sigma_mid, const Rational& t_mid) const;

  Rational width() const { return b_ - a_; }
  Rational height() const { return d_ - c_; }

  std::string to_string() const;

  friend bool operator==(const Region& x, const Region& y)
  {
    return x.kind_ == y.kind_ && cmp(x.a_, y.a_) == 0 && cmp(x.b_, y.b_) == 0 && cmp(x.c_, y.c_) == 0 &&
           cmp(x.d_, y.d_) == 0;
  }

 private:
  RegionKind kind_ = RegionKind::rectangle;
  Rational a_, b_, c_, d_;
};

}  // namespace zpl
