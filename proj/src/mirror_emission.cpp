#include "mirrorsim/mirror_emission.hpp"

#include <cmath>

namespace mirrorsim {

double decay_modulation(double u) {
  if (u < 1e-3) {
    // 1 - (3/2)(sin u/u + cos u/u^2 - sin u/u^3) = u^2/5 - 3u^4/280 + u^6/3780 - ...
    // The direct form subtracts 1 from 1 + O(u^2) three ways and is useless
    // below u ~ 1e-3; the truncation error here is < 1e-24 relative.
    const double u2 = u * u;
    return u2 * (1.0 / 5.0 + u2 * (-3.0 / 280.0 + u2 / 3780.0));
  }
  return 1.0 - 1.5 * (std::sin(u) / u + std::cos(u) / (u * u) - std::sin(u) / (u * u * u));
}

double shift_profile(double u) {
  // No cancellation trouble: the -cos u/u^3 term dominates as u -> 0.
  const double u2 = u * u;
  return (std::cos(u) - std::sin(u) / u - std::cos(u) / u2) / u;
}

namespace {

double checked_k31r(const MirrorConfig& cfg) {
  const double k31r = cfg.k31r();
  if (!(k31r > 0.0)) {
    fail(Errc::NonPositiveDistance, "k31*r must be > 0");
  }
  return k31r;
}

}  // namespace

double gamma_bar_1(const MirrorConfig& cfg, double gamma1) {
  return gamma1 * decay_modulation(2.0 * checked_k31r(cfg));
}

double level_shift(const MirrorConfig& cfg, double gamma1) {
  return 0.75 * gamma1 * shift_profile(2.0 * checked_k31r(cfg));
}

RadiativeCorrection radiative_correction(const MirrorConfig& cfg, const AtomParams& p) {
  return RadiativeCorrection{
      .gamma_bar_1 = gamma_bar_1(cfg, p.gamma1),
      .gamma_bar_2 = p.gamma2,
      .shift = level_shift(cfg, p.gamma1),
      .k31r = cfg.k31r(),
  };
}

namespace {

// |D_hat . k_hat|^2 for a dipole along z and
// k_hat = (cos theta, sin theta cos phi, sin theta sin phi).
double dipole_projection_sq(const Direction& dir) {
  const double p = std::sin(dir.theta) * std::sin(dir.phi);
  return p * p;
}

}  // namespace

double intensity_1(const Direction& dir, double p3, const MirrorConfig& cfg,
                   const AtomParams& p) {
  const double angular = 1.0 - dipole_projection_sq(dir);
  const double standing = std::sin(cfg.k31r() * std::cos(dir.theta));
  return 3.0 * p.gamma1 / (4.0 * std::numbers::pi) * angular * p3 * standing * standing;
}

double intensity_2(const Direction& dir, double p3, const AtomParams& p) {
  const double angular = 1.0 - dipole_projection_sq(dir);
  return 3.0 * p.gamma2 / (8.0 * std::numbers::pi) * angular * p3;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton iteration from the Chebyshev-based starting guess; converges in
    // a handful of steps for any n used here.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

double quadrature_total_rate(const MirrorConfig& cfg, const AtomParams& p,
                             int n_theta, int n_phi) {
  if (n_theta < 8 || n_phi < 8) {
    fail(Errc::GridTooCoarse, "quadrature grid must be at least 8x8");
  }
  checked_k31r(cfg);

  std::vector<double> c, w;
  gauss_legendre(n_theta, c, w);

  // The phi integrand is a degree-2 trigonometric polynomial, so the uniform
  // trapezoid rule is exact once n_phi >= 4; all the refinement effort goes
  // into resolving the sin^2(k31*r*cos theta) oscillations in theta.
  const double dphi = kTwoPi / n_phi;
  double total = 0.0;
  for (int i = 0; i < n_theta; ++i) {
    const double theta = std::acos(c[i]);
    double ring = 0.0;
    for (int j = 0; j < n_phi; ++j) {
      ring += intensity_1(Direction{theta, j * dphi}, 1.0, cfg, p);
    }
    total += w[i] * ring * dphi;
  }
  return total;
}

double quadrature_total_rate_adaptive(const MirrorConfig& cfg, const AtomParams& p) {
  int n_theta = 64, n_phi = 128;
  double prev = quadrature_total_rate(cfg, p, n_theta, n_phi);
  while (n_theta < 1024) {
    n_theta *= 2;
    n_phi *= 2;
    const double next = quadrature_total_rate(cfg, p, n_theta, n_phi);
    if (std::fabs(next - prev) <= 1e-9 * std::fabs(next)) return next;
    prev = next;
  }
  return prev;
}

}  // namespace mirrorsim
