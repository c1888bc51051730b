#include "mirrorsim/modulation.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mirrorsim/params.hpp"

namespace mirrorsim {

double wrap_angle(double a) {
  double r = std::remainder(a, kTwoPi);
  if (r <= -std::numbers::pi) r += kTwoPi;
  return r;
}

namespace {

// Vertex of the parabola through (x0,y0), (x1,y1), (x2,y2), used to refine an
// extremum found at the middle sample. Falls back to x1 when the three points
// are (numerically) collinear.
double refine_extremum(double x0, double y0, double x1, double y1, double x2, double y2) {
  const double d1 = x1 - x0;
  const double d2 = x2 - x1;
  const double denom = d1 * d2 * (d1 + d2);
  const double a = (d1 * (y2 - y1) + d2 * (y0 - y1)) / denom;
  const double b = ((y2 - y1) * d1 * d1 - (y0 - y1) * d2 * d2) / denom;
  if (std::fabs(a) * (d1 + d2) < 1e-14 * std::fabs(b) || a == 0.0) return x1;
  const double xv = x1 - b / (2.0 * a);
  // Keep the refinement inside the bracketing interval.
  return std::clamp(xv, x0, x2);
}

}  // namespace

ModulationMetrics modulation_metrics(std::span<const double> k31r,
                                     std::span<const double> y) {
  const std::size_t n = k31r.size();
  if (n != y.size()) throw std::invalid_argument("x/y size mismatch");
  if (n < 3) fail(Errc::InsufficientSamples, "need at least 3 samples");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(k31r[i] > k31r[i - 1])) {
      throw std::invalid_argument("k31r samples must be strictly increasing");
    }
  }

  // The fringe period in k31*r is pi; require two periods at 64 samples each.
  const double span = k31r.back() - k31r.front();
  if (span < kTwoPi * (1.0 - 1e-9)) {
    fail(Errc::InsufficientSamples, "curve must cover at least two fringe periods");
  }
  const double per_period = static_cast<double>(n) / (span / std::numbers::pi);
  if (per_period < 64.0 * (1.0 - 1e-9)) {
    fail(Errc::InsufficientSamples, "need at least 64 samples per fringe period");
  }

  ModulationMetrics m{};

  // Least-squares harmonic fit y ~= c0 + a cos(2x) + b sin(2x).
  Eigen::Matrix3d ata = Eigen::Matrix3d::Zero();
  Eigen::Vector3d aty = Eigen::Vector3d::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector3d row(1.0, std::cos(2.0 * k31r[i]), std::sin(2.0 * k31r[i]));
    ata += row * row.transpose();
    aty += row * y[i];
  }
  const Eigen::Vector3d coef = ata.ldlt().solve(aty);
  m.mean = coef(0);
  m.amplitude = std::hypot(coef(1), coef(2));

  const double noise_floor = 1e-12 * std::fabs(m.mean);
  m.phase_defined = m.amplitude > noise_floor && m.amplitude > 0.0;
  // Reference sin^2(x) = 1/2 + (1/2)cos(2x - pi) has first-harmonic phase pi.
  m.phase = m.phase_defined ? wrap_angle(std::atan2(coef(2), coef(1)) - std::numbers::pi) : 0.0;

  double ymax = y[0], ymin = y[0];
  for (double v : y) {
    ymax = std::max(ymax, v);
    ymin = std::min(ymin, v);
  }
  m.visibility = (ymax + ymin) > 0.0 ? (ymax - ymin) / (ymax + ymin) : 0.0;

  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (y[i] > y[i - 1] && y[i] >= y[i + 1]) {
      m.maxima.push_back(
          refine_extremum(k31r[i - 1], y[i - 1], k31r[i], y[i], k31r[i + 1], y[i + 1]));
    } else if (y[i] < y[i - 1] && y[i] <= y[i + 1]) {
      m.minima.push_back(
          refine_extremum(k31r[i - 1], y[i - 1], k31r[i], y[i], k31r[i + 1], y[i + 1]));
    }
  }

  return m;
}

}  // namespace mirrorsim
