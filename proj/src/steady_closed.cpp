#include "mirrorsim/steady_closed.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace mirrorsim {

namespace {

// Threshold below which the steady-state denominator is treated as an exact
// dark state rather than divided through.
constexpr double kDarkDenominatorFloor = 1e-30;

// Compensated (Kahan) sum after ordering by decreasing magnitude, so the
// small groups are absorbed into the running compensation instead of being
// rounded away against the large ones.
double compensated_sum(std::array<double, 5> terms) {
  std::sort(terms.begin(), terms.end(),
            [](double a, double b) { return std::fabs(a) > std::fabs(b); });
  double sum = 0.0, comp = 0.0;
  for (double t : terms) {
    const double y = t - comp;
    const double next = sum + y;
    comp = (next - sum) - y;
    sum = next;
  }
  return sum;
}

}  // namespace

EffectiveDetunings effective_detunings(const AtomParams& p, const RadiativeCorrection& rc) {
  return EffectiveDetunings{p.delta1 - rc.shift, p.delta2 - rc.shift};
}

P3Result p3_closed_detail(const AtomParams& p, const RadiativeCorrection& rc) {
  const auto [db1, db2] = effective_detunings(p, rc);
  const double gb1 = rc.gamma_bar_1;
  const double gb2 = rc.gamma_bar_2;
  const double o1s = p.omega1 * p.omega1;
  const double o2s = p.omega2 * p.omega2;
  const double d = db1 - db2;  // equals delta1 - delta2, shift cancels
  const double ds = d * d;

  const double numerator = 4.0 * ds * (gb1 + gb2) * o1s * o2s;

  const double denominator = compensated_sum({
      ((o1s + o2s) * (o1s + o2s) + 8.0 * ds * gb1 * gb2) * (gb1 * o2s + gb2 * o1s),
      4.0 * ds * gb1 * gb2 * (gb1 * o1s + gb2 * o2s),
      4.0 * ds * (gb1 * gb1 * gb1 * o2s + 2.0 * (gb1 + gb2) * o1s * o2s + gb2 * gb2 * gb2 * o1s),
      -8.0 * d * (db1 * gb1 * o2s * o2s - db2 * gb2 * o1s * o1s),
      16.0 * ds * (db1 * db1 * gb1 * o2s + db2 * db2 * gb2 * o1s),
  });

  if (denominator < kDarkDenominatorFloor) {
    return P3Result{0.0, true};
  }
  return P3Result{numerator / denominator, false};
}

double p3_closed(const AtomParams& p, const RadiativeCorrection& rc) {
  const P3Result res = p3_closed_detail(p, rc);
  if (res.dark) {
    fail(Errc::DegenerateDenominator,
         "steady-state denominator underflowed (dark state or no driving)");
  }
  return res.value;
}

double p3_weak_detuning(const AtomParams& p, const RadiativeCorrection& rc) {
  if (p.omega1 == 0.0 && p.omega2 == 0.0) {
    fail(Errc::ZeroDriving, "weak-detuning form needs at least one nonzero Rabi frequency");
  }
  const double gb1 = rc.gamma_bar_1;
  const double gb2 = rc.gamma_bar_2;
  const double o1s = p.omega1 * p.omega1;
  const double o2s = p.omega2 * p.omega2;
  const double d = p.delta1 - p.delta2;
  const double osum = o1s + o2s;
  return 4.0 * d * d * o1s * o2s / (osum * osum) * (gb1 + gb2) / (gb1 * o2s + gb2 * o1s);
}

double p3_large_detuning(const AtomParams& p, const RadiativeCorrection& rc) {
  const auto [db1, db2] = effective_detunings(p, rc);
  if (db1 == 0.0 || db2 == 0.0) {
    fail(Errc::ZeroDetuning, "large-detuning form needs nonzero effective detunings");
  }
  const double gb1 = rc.gamma_bar_1;
  const double gb2 = rc.gamma_bar_2;
  const double o1s = p.omega1 * p.omega1;
  const double o2s = p.omega2 * p.omega2;
  return 0.25 * o1s * o2s * (gb1 + gb2) / (db1 * db1 * gb1 * o2s + db2 * db2 * gb2 * o1s);
}

}  // namespace mirrorsim
