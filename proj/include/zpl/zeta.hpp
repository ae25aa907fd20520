#pragma once

#include "zpl/ball.hpp"
#include "zpl/precision.hpp"

#include <optional>
#include <vector>

namespace zpl {

/// Euler–Maclaurin truncation: the Dirichlet sum runs over n < N and M
/// Bernoulli corrections are added.
struct EulerMaclaurinParams {
  long N = 50;
  int M = 12;
};

/// N = max(ceil(|t|/2) + 10, 50).
long default_cutoff(double t);

/// Certified ζ^(j)(s) for j = 0..k_max (k_max <= 2). The enclosure of s may
/// have a positive radius; the result then covers every point of the disk.
/// Without explicit params, N is the default cutoff and M grows until the
/// remainder bound drops below 2^-bits.
std::vector<CertifiedComplex> zeta_derivatives(const CertifiedComplex& s, int k_max, Precision prec,
                                               std::optional<EulerMaclaurinParams> params = std::nullopt);

struct GValue {
  CertifiedComplex value;
  CertifiedComplex s;
  /// False when the enclosure of G(s) contains 0.
  bool sign_determined = true;
};

/// G(s) = -2^s / log 2 · ζ'(s).
GValue G_eval(const CertifiedComplex& s, Precision prec);

/// G(s) from its Dirichlet expansion 1 + Σ_{3<=n<=terms} (log n/log 2)(2/n)^s,
/// with the omitted tail folded into the radius. Requires σ >= 2.
CertifiedComplex G_dirichlet(const CertifiedComplex& s, long terms, Precision prec);

/// Upper bounds on |G(σ+it) - 1| and |ζ(σ+it) - 1|, valid for σ > 2.
double G_tail_bound(double sigma);
double zeta_tail_bound(double sigma);

/// Smallest integer σ >= 10 at which the tail bound is below `tol`.
int G_anchor_sigma(double tol = 1e-6);
int zeta_anchor_sigma(double tol = 1e-6);

enum class LogDerivative { zeta, zeta_prime, G };

/// ζ'/ζ, ζ''/ζ' or G'/G = log 2 + ζ''/ζ'. Throws DenominatorZero when the
/// denominator enclosure contains 0.
CertifiedComplex log_derivative(LogDerivative which, const CertifiedComplex& s, Precision prec);

/// Riemann–Siegel theta θ(t) = Im log Γ(1/4 + it/2) - (t/2) log π.
RealBall riemann_siegel_theta(const RealBall& t);

/// Hardy's Z(t) = e^{iθ(t)} ζ(1/2 + it), real for real t.
RealBall hardy_z(const Rational& t, Precision prec);

}  // namespace zpl
