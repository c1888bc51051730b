#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "mirrorsim/modulation.hpp"
#include "test_support.hpp"

using namespace mirrorsim;
using std::numbers::pi;

namespace {

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = lo + (hi - lo) * i / (n - 1);
  return x;
}

std::vector<double> map(const std::vector<double>& x, double (*f)(double)) {
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = f(x[i]);
  return y;
}

}  // namespace

TEST_SUITE("modulation") {

TEST_CASE("the reference fringe sin^2(x) has amplitude 1/2, phase 0, visibility 1") {
  const auto x = grid(0.0, 4.0 * pi, 601);  // grid hits the nodes and crests
  const auto y = map(x, [](double v) { return std::sin(v) * std::sin(v); });
  const ModulationMetrics m = modulation_metrics(x, y);

  CHECK(m.mean == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(m.amplitude == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(m.phase_defined);
  CHECK(std::fabs(m.phase) < 1e-9);
  CHECK(m.visibility == doctest::Approx(1.0).epsilon(1e-12));

  REQUIRE(m.maxima.size() == 4);
  REQUIRE(m.minima.size() == 3);
  for (std::size_t k = 0; k < m.maxima.size(); ++k) {
    CHECK(m.maxima[k] == doctest::Approx((2.0 * k + 1.0) * pi / 2.0).epsilon(1e-6));
  }
  for (std::size_t k = 0; k < m.minima.size(); ++k) {
    CHECK(m.minima[k] == doctest::Approx((k + 1.0) * pi).epsilon(1e-8));
  }
}

TEST_CASE("a shifted fringe reports phase 2*x0 and the offset extrema") {
  const double x0 = 0.3;
  const auto x = grid(0.0, 4.0 * pi, 601);
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double s = std::sin(x[i] - x0);
    y[i] = 2.0 + 0.8 * s * s;
  }
  const ModulationMetrics m = modulation_metrics(x, y);

  CHECK(m.mean == doctest::Approx(2.4).epsilon(1e-12));
  CHECK(m.amplitude == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(m.phase == doctest::Approx(2.0 * x0).epsilon(1e-9));
  CHECK(m.visibility == doctest::Approx(1.0 / 6.0).epsilon(1e-3));
  // First interior maximum sits at pi/2 + x0.
  REQUIRE(!m.maxima.empty());
  CHECK(m.maxima.front() == doctest::Approx(pi / 2.0 + x0).epsilon(1e-6));
}

TEST_CASE("an inverted fringe is reported in antiphase") {
  const auto x = grid(0.0, 4.0 * pi, 601);
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double s = std::sin(x[i]);
    y[i] = 1.0 - 0.3 * s * s;
  }
  const ModulationMetrics m = modulation_metrics(x, y);
  CHECK(m.mean == doctest::Approx(0.85).epsilon(1e-12));
  CHECK(m.amplitude == doctest::Approx(0.15).epsilon(1e-12));
  CHECK(std::fabs(m.phase) == doctest::Approx(pi).epsilon(1e-9));
}

TEST_CASE("a flat curve has no usable phase and zero visibility") {
  const auto x = grid(0.0, 4.0 * pi, 601);
  const std::vector<double> y(x.size(), 3.0);
  const ModulationMetrics m = modulation_metrics(x, y);
  CHECK(m.mean == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(m.amplitude < 1e-10);
  CHECK_FALSE(m.phase_defined);
  CHECK(m.phase == 0.0);
  CHECK(m.visibility == 0.0);
  CHECK(m.maxima.empty());
  CHECK(m.minima.empty());
}

TEST_CASE("a slow envelope does not destroy the phase estimate") {
  // Fringes riding on a 1/x envelope, as the mirror-modified quantities do.
  const auto x = grid(2.0 * pi, 8.0 * pi, 1200);
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double s = std::sin(x[i]);
    y[i] = 1.0 + (3.0 / x[i]) * s * s;
  }
  const ModulationMetrics m = modulation_metrics(x, y);
  CHECK(m.phase_defined);
  CHECK(std::fabs(m.phase) < 0.1);  // still recognizably in phase with sin^2
}

TEST_CASE("too little data is refused") {
  // Not quite two periods.
  auto x = grid(0.0, 6.0, 600);
  auto y = map(x, [](double v) { return std::sin(v) * std::sin(v); });
  CHECK_SIM_ERROR(modulation_metrics(x, y), Errc::InsufficientSamples);

  // Two periods but sampled too sparsely.
  x = grid(0.0, 4.0 * pi, 100);
  y = map(x, [](double v) { return std::sin(v) * std::sin(v); });
  CHECK_SIM_ERROR(modulation_metrics(x, y), Errc::InsufficientSamples);

  x = {1.0, 2.0};
  y = {0.0, 1.0};
  CHECK_SIM_ERROR(modulation_metrics(x, y), Errc::InsufficientSamples);
}

TEST_CASE("mismatched or unsorted input is a caller bug, not a physics condition") {
  auto x = grid(0.0, 4.0 * pi, 601);
  auto y = map(x, [](double v) { return std::sin(v) * std::sin(v); });
  y.pop_back();
  CHECK_THROWS_AS(modulation_metrics(x, y), std::invalid_argument);

  y.push_back(0.0);
  std::swap(x[10], x[11]);
  CHECK_THROWS_AS(modulation_metrics(x, y), std::invalid_argument);
}

TEST_CASE("wrap_angle maps onto (-pi, pi] with pi kept positive") {
  CHECK(wrap_angle(0.0) == 0.0);
  CHECK(wrap_angle(0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(wrap_angle(-0.5) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(wrap_angle(pi) == doctest::Approx(pi).epsilon(1e-15));
  CHECK(wrap_angle(-pi) == doctest::Approx(pi).epsilon(1e-15));
  CHECK(wrap_angle(3.0 * pi) == doctest::Approx(pi).epsilon(1e-15));
  CHECK(wrap_angle(2.5 * pi) == doctest::Approx(0.5 * pi).epsilon(1e-14));
  CHECK(wrap_angle(-7.0) == doctest::Approx(-7.0 + kTwoPi).epsilon(1e-14));
}

}  // TEST_SUITE
