#include "zpl/geometry.hpp"

#include "zpl/errors.hpp"

#include <cmath>

namespace zpl {

Point lerp(const Point& a, const Point& b, const Rational& u)
{
  Point p{a.sigma + u * (b.sigma - a.sigma), a.t + u * (b.t - a.t)};
  p.sigma.canonicalize();
  p.t.canonicalize();
  return p;
}

double Segment::length() const
{
  return std::hypot(to_double(b.sigma - a.sigma), to_double(b.t - a.t));
}

Path::Path(std::vector<Segment> segments) : segments_(std::move(segments))
{
  for (Segment& s : segments_) {
    for (Point* p : {&s.a, &s.b}) {
      p->sigma.canonicalize();
      p->t.canonicalize();
    }
  }
  for (std::size_t i = 1; i < segments_.size(); ++i) {
    if (!(segments_[i - 1].b == segments_[i].a)) {
      throw Error(ErrorCode::PreconditionViolation, "path segments do not share endpoints");
    }
  }
}

Path Path::horizontal(const Rational& sigma_from, const Rational& sigma_to, const Rational& t)
{
  return Path({Segment{{sigma_from, t}, {sigma_to, t}}});
}

Path Path::polyline(const std::vector<Point>& vertices)
{
  std::vector<Segment> segs;
  for (std::size_t i = 1; i < vertices.size(); ++i) segs.push_back({vertices[i - 1], vertices[i]});
  return Path(std::move(segs));
}

bool Path::closed() const { return !segments_.empty() && segments_.front().a == segments_.back().b; }

Point Path::start() const
{
  if (segments_.empty()) throw Error(ErrorCode::PreconditionViolation, "empty path has no start");
  return segments_.front().a;
}

Point Path::end() const
{
  if (segments_.empty()) throw Error(ErrorCode::PreconditionViolation, "empty path has no end");
  return segments_.back().b;
}

Path Path::then(const Path& other) const
{
  std::vector<Segment> segs = segments_;
  segs.insert(segs.end(), other.segments_.begin(), other.segments_.end());
  return Path(std::move(segs));
}

Region Region::rectangle(Rational sigma_lo, Rational sigma_hi, Rational t_lo, Rational t_hi)
{
  if (!(sigma_lo < sigma_hi) || !(t_lo < t_hi)) {
    throw Error(ErrorCode::PreconditionViolation, "rectangle needs sigma_lo < sigma_hi and t_lo < t_hi");
  }
  Region r;
  r.kind_ = RegionKind::rectangle;
  r.a_ = std::move(sigma_lo);
  r.b_ = std::move(sigma_hi);
  r.c_ = std::move(t_lo);
  r.d_ = std::move(t_hi);
  for (Rational* x : {&r.a_, &r.b_, &r.c_, &r.d_}) x->canonicalize();
  return r;
}

Region Region::disk(Rational center_sigma, Rational center_t, Rational radius)
{
  if (sgn(radius) <= 0) throw Error(ErrorCode::PreconditionViolation, "disk radius must be positive");
  Region r;
  r.kind_ = RegionKind::disk;
  r.a_ = std::move(center_sigma);
  r.b_ = std::move(radius);
  r.c_ = std::move(center_t);
  r.d_ = 0;
  for (Rational* x : {&r.a_, &r.b_, &r.c_}) x->canonicalize();
  return r;
}

bool Region::contains(const Rational& sigma, const Rational& t) const
{
  if (kind_ == RegionKind::rectangle) return a_ <= sigma && sigma <= b_ && c_ <= t && t <= d_;
  Rational ds = sigma - a_;
  Rational dt = t - c_;
  return ds * ds + dt * dt < b_ * b_;
}

bool Region::contains(double sigma, double t) const
{
  if (kind_ == RegionKind::rectangle) {
    return to_double(a_) <= sigma && sigma <= to_double(b_) && to_double(c_) <= t && t <= to_double(d_);
  }
  return std::hypot(sigma - to_double(a_), t - to_double(c_)) < to_double(b_);
}

Path Region::boundary() const
{
  if (kind_ != RegionKind::rectangle) throw Error(ErrorCode::PreconditionViolation, "disk boundary is not a path");
  return Path::polyline({{a_, c_}, {b_, c_}, {b_, d_}, {a_, d_}, {a_, c_}});
}

std::vector<Region> Region::quadrants(const Rational& sigma_mid, const Rational& t_mid) const
{
  return {rectangle(a_, sigma_mid, c_, t_mid), rectangle(sigma_mid, b_, c_, t_mid),
          rectangle(a_, sigma_mid, t_mid, d_), rectangle(sigma_mid, b_, t_mid, d_)};
}

std::string Region::to_string() const
{
  if (kind_ == RegionKind::rectangle) {
    return "[" + exact_string(a_) + ", " + exact_string(b_) + "] x [" + exact_string(c_) + ", " +
           exact_string(d_) + "]";
  }
  return "disk(" + exact_string(a_) + " + i" + exact_string(c_) + ", r=" + exact_string(b_) + ")";
}

}  // namespace zpl
