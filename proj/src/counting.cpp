#include "zpl/counting.hpp"

#include "zpl/zeta.hpp"

#include <cctype>
#include <cmath>
#include <numbers>

namespace zpl {

namespace {

constexpr double kPi = std::numbers::pi;

// Heights closer than this to an ordinate are treated as inadmissible.
constexpr double kOrdinateGuard = 1e-9;

bool near_ordinate(const ZeroData& zeros, const Rational& T)
{
  const double t = to_double(T);
  for (const auto& z : zeros.zeta_prime.zeros) {
    if (std::fabs(z.gamma_d() - t) <= kOrdinateGuard + to_double(z.gamma_rad)) return true;
  }
  for (const auto& z : zeros.critical.zeros) {
    if (std::fabs(z.gamma_d() - t) <= kOrdinateGuard) return true;
  }
  return false;
}

Rational nudge(const Rational& T, int retry)
{
  Rational n = T + pow2(-20) * (retry + 1);
  n.canonicalize();
  return n;
}

}  // namespace

double main_term_N1(double T) { return T / (2 * kPi) * std::log(T / (4 * kPi * std::numbers::e)); }

double main_term_N(double T) { return T / (2 * kPi) * std::log(T / (2 * kPi * std::numbers::e)); }

RealBall main_term_N1(const RealBall& T)
{
  const mpfr_prec_t p = T.prec();
  const RealBall two_pi = pi_ball(p) * 2L;
  const RealBall e = exp(RealBall::from_integer(1, p));
  return T / two_pi * log(T / (two_pi * e * 2L));
}

RealBall main_term_N(const RealBall& T)
{
  const mpfr_prec_t p = T.prec();
  const RealBall two_pi = pi_ball(p) * 2L;
  const RealBall e = exp(RealBall::from_integer(1, p));
  return T / two_pi * log(T / (two_pi * e));
}

double smooth_count_N(double T)
{
  const RealBall th = riemann_siegel_theta(RealBall::from_double(T, 128));
  return th.to_double() / kPi + 1;
}

ZeroData compute_zero_data(const Rational& T, Precision prec)
{
  ZeroData d;
  d.zeta_prime = enumerate_zeta_prime(T, prec);
  d.critical = critical_zeros_up_to(T, prec);
  return d;
}

int n1_enumerated(const Isolation& zeros, const Rational& T)
{
  if (T > zeros.rect.t_hi()) {
    throw Error(ErrorCode::InsufficientZeroWindow, "zeta' zeros known only up to " + exact_string(zeros.rect.t_hi()));
  }
  int n = 0;
  for (const auto& z : zeros.zeros) {
    if (z.gamma <= T && sgn(z.gamma) > 0 && sgn(z.beta) > 0) n += z.multiplicity;
  }
  return n;
}

int n_enumerated(const CriticalZeros& zeros, const Rational& T)
{
  if (T > zeros.T && T >= 10) {
    throw Error(ErrorCode::InsufficientZeroWindow, "critical zeros known only up to " + exact_string(zeros.T));
  }
  int n = 0;
  for (const auto& z : zeros.zeros) {
    if (z.gamma <= T) ++n;
  }
  return n;
}

CountResult count_N1(const Rational& T, const Isolation& zeros, SegmentTracker& tracker)
{
  ZeroData probe;
  probe.zeta_prime = zeros;
  Rational t = T;
  for (int retry = 0; retry <= 3; ++retry) {
    if (retry > 0) t = nudge(t, retry - 1);
    if (near_ordinate(probe, t)) continue;
    WindingResult w;
    try {
      w = winding_count_strict(tracker, zeta_prime_window(t));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ZeroOnPath) continue;
      throw;
    }
    CountResult r{n1_enumerated(zeros, t), w.count, t, retry};
    if (r.enumerated != r.winding) {
      throw Error(ErrorCode::CountMismatch, "N1 enumeration " + std::to_string(r.enumerated) + " vs winding " +
                                                std::to_string(r.winding) + " at T = " + exact_string(t));
    }
    return r;
  }
  throw Error(ErrorCode::ZeroOnBoundary, "T stays on an ordinate of zeta' after 3 nudges");
}

CountResult count_N(const Rational& T, const CriticalZeros& zeros, SegmentTracker& tracker)
{
  ZeroData probe;
  probe.critical = zeros;
  Rational t = T;
  for (int retry = 0; retry <= 3; ++retry) {
    if (retry > 0) t = nudge(t, retry - 1);
    if (near_ordinate(probe, t)) continue;
    WindingResult w;
    try {
      w = winding_count_strict(tracker, zeta_window(t));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ZeroOnPath) continue;
      throw;
    }
    CountResult r{n_enumerated(zeros, t), w.count, t, retry};
    if (r.enumerated != r.winding) {
      throw Error(ErrorCode::CountMismatch, "N enumeration " + std::to_string(r.enumerated) + " vs winding " +
                                                std::to_string(r.winding) + " at T = " + exact_string(t));
    }
    return r;
  }
  throw Error(ErrorCode::ZeroOnBoundary, "T stays on an ordinate of zeta after 3 nudges");
}

int count_N1(const Rational& T, Precision prec)
{
  SegmentTracker tracker(TrackedFunction::zeta_prime, prec);
  const Isolation zeros = enumerate_zeta_prime(tracker, T + pow2(-10));
  return count_N1(T, zeros, tracker).winding;
}

int count_N(const Rational& T, Precision prec)
{
  SegmentTracker tracker(TrackedFunction::zeta, prec);
  CriticalZeros zeros;
  if (T >= 10) {
    zeros = critical_zeros_up_to(T + pow2(-10), prec);
  } else {
    zeros.T = T;
  }
  return count_N(T, zeros, tracker).winding;
}

CountReport lemma1_residual(const Rational& T_in, const ZeroData& zeros, ArgContext& ctx)
{
  Rational T = T_in;
  for (int retry = 0; retry <= 3; ++retry) {
    if (retry > 0) T = nudge(T, retry - 1);
    if (near_ordinate(zeros, T)) continue;
    CountReport r;
    r.T = T;
    r.nudges = retry;
    r.n1_enum = n1_enumerated(zeros.zeta_prime, T);
    r.n_enum = n_enumerated(zeros.critical, T);
    ArgValue g, z;
    try {
      g = arg_at_half(ctx.G, T);
      z = arg_at_half(ctx.zeta, T);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ZeroAtEndpoint || e.code() == ErrorCode::ZeroOnPath) continue;
      throw;
    }
    const double t = to_double(T);
    r.main1 = main_term_N1(t);
    r.main0 = main_term_N(t);
    r.argG = g.value;
    r.argZ = z.value;
    r.arg_rad = g.rad + z.rad;
    r.lemma1_residual = r.n1_enum - r.main1 - (r.argG + r.argZ) / (2 * kPi);
    return r;
  }
  throw Error(ErrorCode::ZeroAtEndpoint, "no admissible height near T = " + exact_string(T_in));
}

// ---------------------------------------------------------------- Φ(T)

struct PhiCurve::Node {
  enum Kind { number, var, add, sub, mul, div, pow, neg, log, sqrt, exp } kind = number;
  double value = 0;
  std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const PhiCurve::Node>;

class PhiParser {
 public:
  explicit PhiParser(const std::string& s) : s_(s) {}

  NodePtr parse()
  {
    NodePtr n = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return n;
  }

 private:
  using Node = PhiCurve::Node;

  [[noreturn]] void fail(const std::string& why) const
  {
    throw Error(ErrorCode::ParseError, "phi expression: " + why + " at offset " + std::to_string(pos_));
  }

  void skip()
  {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c)
  {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static NodePtr make(Node::Kind k, NodePtr a = nullptr, NodePtr b = nullptr, double v = 0)
  {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    n->value = v;
    return n;
  }

  NodePtr expr()
  {
    NodePtr n = term();
    for (;;) {
      if (eat('+')) {
        n = make(Node::add, n, term());
      } else if (eat('-')) {
        n = make(Node::sub, n, term());
      } else {
        return n;
      }
    }
  }

  NodePtr term()
  {
    NodePtr n = unary();
    for (;;) {
      if (eat('*')) {
        n = make(Node::mul, n, unary());
      } else if (eat('/')) {
        n = make(Node::div, n, unary());
      } else {
        return n;
      }
    }
  }

  NodePtr unary()
  {
    if (eat('-')) return make(Node::neg, unary());
    if (eat('+')) return unary();
    NodePtr base = primary();
    if (eat('^')) return make(Node::pow, base, unary());
    return base;
  }

  NodePtr primary()
  {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    if (eat('(')) {
      NodePtr n = expr();
      if (!eat(')')) fail("missing ')'");
      return n;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t used = 0;
      double v = 0;
      try {
        v = std::stod(s_.substr(pos_), &used);
      } catch (const std::exception&) {
        fail("bad number");
      }
      pos_ += used;
      return make(Node::number, nullptr, nullptr, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      if (name == "T") return make(Node::var);
      Node::Kind k;
      if (name == "log") {
        k = Node::log;
      } else if (name == "sqrt") {
        k = Node::sqrt;
      } else if (name == "exp") {
        k = Node::exp;
      } else {
        pos_ = start;
        fail("unknown name '" + name + "'");
      }
      if (!eat('(')) fail("expected '(' after " + name);
      NodePtr arg = expr();
      if (!eat(')')) fail("missing ')'");
      return make(k, arg);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

double eval_node(const PhiCurve::Node& n, double T)
{
  using Node = PhiCurve::Node;
  switch (n.kind) {
    case Node::number: return n.value;
    case Node::var: return T;
    case Node::add: return eval_node(*n.a, T) + eval_node(*n.b, T);
    case Node::sub: return eval_node(*n.a, T) - eval_node(*n.b, T);
    case Node::mul: return eval_node(*n.a, T) * eval_node(*n.b, T);
    case Node::div: return eval_node(*n.a, T) / eval_node(*n.b, T);
    case Node::pow: return std::pow(eval_node(*n.a, T), eval_node(*n.b, T));
    case Node::neg: return -eval_node(*n.a, T);
    case Node::log: return std::log(eval_node(*n.a, T));
    case Node::sqrt: return std::sqrt(eval_node(*n.a, T));
    case Node::exp: return std::exp(eval_node(*n.a, T));
  }
  return 0;
}

}  // namespace

PhiCurve PhiCurve::parse(const std::string& text)
{
  PhiCurve c;
  c.text_ = text;
  c.root_ = PhiParser(text).parse();
  return c;
}

double PhiCurve::operator()(double T) const { return eval_node(*root_, T); }

ErrorSeries error_series(const std::vector<Rational>& grid, const ZeroData& zeros, ArgContext& ctx,
                         const PhiCurve& phi)
{
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i - 1] < grid[i])) throw Error(ErrorCode::PreconditionViolation, "T grid must be strictly increasing");
  }
  ErrorSeries out;
  out.phi = phi.text();
  for (const Rational& T : grid) {
    ErrorRow row;
    row.report = lemma1_residual(T, zeros, ctx);
    const double t = to_double(row.report.T);
    const double l = std::log(t);
    const double ll = std::log(l);
    row.e1 = row.report.n1_enum - row.report.main1;
    row.e0 = row.report.n_enum - row.report.main0;
    row.r_lit = l / ll;
    row.r_aka = l / std::sqrt(ll);
    row.r_phi = phi(t);
    out.rows.push_back(row);
  }
  return out;
}

// ------------------------------------------------------- dyadic regions

DyadicParams default_dyadic_params(double T)
{
  const double l = std::log(T);
  return {1 / std::sqrt(l), std::numbers::e, static_cast<int>(std::floor(std::log(l) / 2)) + 1};
}

std::vector<double> dyadic_heights(const DyadicParams& p)
{
  if (!(p.X > 0) || !(p.g >= 2) || p.k < 1) {
    throw Error(ErrorCode::PreconditionViolation, "dyadic parameters need X > 0, g >= 2, k >= 1");
  }
  std::vector<double> y;
  double v = p.X;
  for (int j = 1; j <= p.k; ++j) {
    v *= p.g;
    y.push_back(v);
  }
  return y;
}

double subtended_angle(double a_sigma, double a_t, double b_sigma, double b_t, double rho_sigma, double rho_t)
{
  const double ux = b_sigma - rho_sigma;
  const double uy = b_t - rho_t;
  const double vx = a_sigma - rho_sigma;
  const double vy = a_t - rho_t;
  return std::atan2(ux * vy - uy * vx, ux * vx + uy * vy);
}

bool on_critical_line(const IsolatedZero& z)
{
  const Rational half(1, 2);
  return z.beta - z.beta_rad <= half && half <= z.beta + z.beta_rad;
}

DyadicReport dyadic_regions(double T, const DyadicParams& p, const Isolation& zeros, SegmentTracker& tracker)
{
  const std::vector<double> Y = dyadic_heights(p);
  if (to_double(zeros.rect.t_hi()) < T + 5) {
    throw Error(ErrorCode::InsufficientZeroWindow, "zeta' zeros must reach T + 5");
  }
  DyadicReport rep;
  rep.T = T;
  rep.X = p.X;
  rep.g = p.g;
  rep.k = p.k;
  const Rational half(1, 2);
  const Rational Tq = rational_from_double(T);

  auto in_R = [&](const IsolatedZero& z, double y) {
    return z.beta > half && !on_critical_line(z) && z.beta_d() <= 0.5 + y && std::fabs(z.gamma_d() - T) <= y;
  };

  int prev_w = 0;
  for (int j = 1; j <= p.k; ++j) {
    const double y = Y[j - 1];
    DyadicLevel lv;
    lv.j = j;
    lv.Y = y;
    const Rational yq = rational_from_double(y);
    lv.rect = Region::rectangle(half, ceil_to_dyadic(half + yq, kGridBits), floor_to_dyadic(Tq - yq, kGridBits),
                                ceil_to_dyadic(Tq + yq, kGridBits));
    lv.winding_R = winding_count(tracker, lv.rect).count;
    for (const auto& z : zeros.zeros) {
      if (in_R(z, y)) lv.enumerated_R += z.multiplicity;
    }
    lv.N_U = lv.winding_R - prev_w;
    prev_w = lv.winding_R;
    rep.levels.push_back(lv);
  }

  const double a_sigma = 0.5 + p.X;
  const Region disk = Region::disk(rational_from_double(0.5 + p.X / 2), Tq, 5);
  for (const auto& z : zeros.zeros) {
    if (!disk.contains(z.beta, z.gamma)) continue;
    const double f = z.multiplicity * subtended_angle(a_sigma, T, 0.5, T, z.beta_d(), z.gamma_d());
    rep.sum_total += f;
    if (on_critical_line(z) && std::fabs(z.gamma_d() - T) <= Y.back()) {
      rep.sum_line += f;
      continue;
    }
    bool placed = false;
    for (auto& lv : rep.levels) {
      if (in_R(z, lv.Y)) {
        lv.sum += f;
        placed = true;
        break;
      }
    }
    if (!placed) rep.sum_rest += f;
  }
  return rep;
}

}  // namespace zpl
