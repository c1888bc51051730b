#include "mirrorsim/verify.hpp"

#include <cmath>
#include <random>

#include <json.hpp>

#include "mirrorsim/dicke.hpp"

namespace mirrorsim {

namespace {

const AtomParams kReferenceAtom{.omega1 = 10.0, .omega2 = 5.0, .delta1 = 2.0,
                                .delta2 = 0.0, .gamma1 = 15.1, .gamma2 = 5.4};

struct Draw {
  AtomParams params;
  MirrorConfig mirror;
};

Draw random_draw(std::mt19937& rng) {
  std::uniform_real_distribution<double> rabi(0.5, 20.0);
  std::uniform_real_distribution<double> detuning(-10.0, 10.0);
  std::uniform_real_distribution<double> rate(0.5, 20.0);
  std::uniform_real_distribution<double> distance(0.05, 6.4);
  Draw d;
  d.params = AtomParams{.omega1 = rabi(rng), .omega2 = rabi(rng),
                        .delta1 = detuning(rng), .delta2 = detuning(rng),
                        .gamma1 = rate(rng), .gamma2 = rate(rng)};
  d.mirror = MirrorConfig{.r = distance(rng)};
  return d;
}

// Closed-form evaluation, optionally with the deliberate corruption used by
// the mutation self-test.
double closed_form_p3(const AtomParams& p, RadiativeCorrection rc, bool mutate) {
  if (mutate) rc.gamma_bar_1 = -rc.gamma_bar_1;
  return p3_closed_detail(p, rc).value;
}

CheckResult closed_vs_liouvillian_grid(bool mutate) {
  const int sign = calibrated_detuning_sign();
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    MirrorConfig m{.r = 1.0 + 5.0 * i / 199.0};
    const RadiativeCorrection rc = radiative_correction(m, kReferenceAtom);
    const double closed = closed_form_p3(kReferenceAtom, rc, mutate);
    const double numeric = steady_state(build_liouvillian(kReferenceAtom, rc, sign)).p3();
    worst = std::max(worst, std::fabs(numeric - closed));
  }
  return CheckResult{"closed_form_vs_liouvillian_grid", worst < 1e-8, worst, 1e-8,
                     "max |rho33 - p3_closed| over 200 distances"};
}

CheckResult closed_vs_liouvillian_random(const VerifyOptions& options) {
  const int sign = calibrated_detuning_sign();
  std::mt19937 rng(options.seed);
  double worst = 0.0;
  for (int i = 0; i < options.random_draws; ++i) {
    const Draw d = random_draw(rng);
    const RadiativeCorrection rc = radiative_correction(d.mirror, d.params);
    const double closed = closed_form_p3(d.params, rc, options.mutate_gamma_bar_sign);
    const double numeric = steady_state(build_liouvillian(d.params, rc, sign)).p3();
    worst = std::max(worst, std::fabs(numeric - closed));
  }
  return CheckResult{"closed_form_vs_liouvillian_random", worst < 1e-8, worst, 1e-8,
                     "max |rho33 - p3_closed| over random parameter draws"};
}

CheckResult quadrature_check() {
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    // Log-spaced distances from 0.1 to 20 wavelengths.
    const double r = 0.1 * std::pow(200.0, i / 19.0);
    const MirrorConfig m{.r = r};
    const double direct = gamma_bar_1(m, kReferenceAtom.gamma1);
    const double integrated = quadrature_total_rate_adaptive(m, kReferenceAtom);
    worst = std::max(worst, std::fabs(integrated - direct) / direct);
  }
  return CheckResult{"quadrature_vs_gamma_bar_1", worst < 1e-6, worst, 1e-6,
                     "max relative difference, sphere integral vs closed rate, 20 distances"};
}

CheckResult dicke_check() {
  const EquivalenceReport report = verify_mirror_image(MirrorConfig{}, kReferenceAtom.gamma1);
  const double worst = std::max(report.max_rate_residual, report.max_shift_residual);
  return CheckResult{"dicke_pair_equivalence", report.passed, worst, report.tolerance,
                     "max |pair(2r) - mirror(r)| over rate and shift, 100 distances"};
}

CheckResult limits_check() {
  const double g1 = kReferenceAtom.gamma1;
  const MirrorConfig far{.r = 1e6 / kTwoPi};   // k31*r = 1e6
  const MirrorConfig near{.r = 1e-4 / kTwoPi};  // k31*r = 1e-4
  // Each limit normalized by its own tolerance; the worst ratio must be < 1.
  const double far_rate = std::fabs(gamma_bar_1(far, g1) - g1) / g1 / 1e-5;
  const double far_shift = std::fabs(level_shift(far, g1)) / g1 / 1e-5;
  const double near_rate = gamma_bar_1(near, g1) / g1 / 1e-6;
  const double worst = std::max({far_rate, far_shift, near_rate});
  return CheckResult{"radiative_limits", worst < 1.0, worst, 1.0,
                     "free-space and contact limits, each residual over its tolerance"};
}

CheckResult dark_state_closed() {
  double worst = 0.0;
  for (double delta : {0.0, 1.0, -2.5}) {
    AtomParams p = kReferenceAtom;
    p.delta1 = p.delta2 = delta;
    for (double r : {0.3, 1.0, 2.7}) {
      const RadiativeCorrection rc = radiative_correction(MirrorConfig{.r = r}, p);
      worst = std::max(worst, std::fabs(p3_closed_detail(p, rc).value));
    }
  }
  return CheckResult{"dark_state_closed_form", worst == 0.0, worst, 0.0,
                     "p3_closed at equal detunings must vanish exactly"};
}

CheckResult dark_state_liouvillian() {
  const int sign = calibrated_detuning_sign();
  double worst = 0.0;
  for (double delta : {0.0, 1.0, -2.5}) {
    AtomParams p = kReferenceAtom;
    p.delta1 = p.delta2 = delta;
    for (double r : {0.3, 1.0, 2.7}) {
      const RadiativeCorrection rc = radiative_correction(MirrorConfig{.r = r}, p);
      worst = std::max(worst, steady_state(build_liouvillian(p, rc, sign)).p3());
    }
  }
  return CheckResult{"dark_state_liouvillian", worst < 1e-10, worst, 1e-10,
                     "steady-state rho33 at equal detunings"};
}

CheckResult steady_state_invariants(const VerifyOptions& options) {
  const int sign = calibrated_detuning_sign();
  std::mt19937 rng(options.seed + 1);
  double worst = 0.0;  // each deviation normalized by its own tolerance
  for (int i = 0; i < 100; ++i) {
    const Draw d = random_draw(rng);
    const RadiativeCorrection rc = radiative_correction(d.mirror, d.params);
    const Liouvillian li = build_liouvillian(d.params, rc, sign);
    const DensityMatrix3 rho = steady_state(li);
    const StateCheck check = check_density_matrix(rho.rho);
    const double fixed_point = (li.op * vec(rho.rho)).norm();
    worst = std::max({worst, check.hermiticity_error / 1e-12, check.trace_error / 1e-12,
                      -check.min_eigenvalue / 1e-10, fixed_point / 1e-10});
  }
  return CheckResult{"steady_state_invariants", worst < 1.0, worst, 1.0,
                     "hermiticity, trace, positivity, fixed-point residual over tolerance"};
}

CheckResult trace_preservation() {
  const int sign = calibrated_detuning_sign();
  const RadiativeCorrection rc =
      radiative_correction(MirrorConfig{.r = 1.3}, kReferenceAtom);
  const Liouvillian li = build_liouvillian(kReferenceAtom, rc, sign);
  double worst = 0.0;
  for (int basis = 0; basis < 9; ++basis) {
    Eigen::Matrix3cd e = Eigen::Matrix3cd::Zero();
    e(basis % 3, basis / 3) = 1.0;
    const Vector9cd out = li.op * vec(e);
    worst = std::max(worst, std::abs(out(0) + out(4) + out(8)));
  }
  const double tol = 1e-12 * (1.0 + li.rate_scale);
  return CheckResult{"liouvillian_trace_preservation", worst < tol, worst, tol,
                     "|tr(L rho)| over the 9 matrix units"};
}

}  // namespace

VerifyReport verify_all(const VerifyOptions& options) {
  VerifyReport report;
  report.checks.push_back(closed_vs_liouvillian_grid(options.mutate_gamma_bar_sign));
  report.checks.push_back(closed_vs_liouvillian_random(options));
  report.checks.push_back(quadrature_check());
  report.checks.push_back(dicke_check());
  report.checks.push_back(limits_check());
  report.checks.push_back(dark_state_closed());
  report.checks.push_back(dark_state_liouvillian());
  report.checks.push_back(steady_state_invariants(options));
  report.checks.push_back(trace_preservation());
  report.all_passed = true;
  for (const CheckResult& check : report.checks) report.all_passed &= check.passed;
  return report;
}

void write_json(const VerifyReport& report, std::ostream& out) {
  nlohmann::ordered_json j;
  j["all_passed"] = report.all_passed;
  j["checks"] = nlohmann::ordered_json::array();
  for (const CheckResult& check : report.checks) {
    nlohmann::ordered_json jc;
    jc["name"] = check.name;
    jc["passed"] = check.passed;
    jc["max_residual"] = check.max_residual;
    jc["tolerance"] = check.tolerance;
    jc["note"] = check.note;
    j["checks"].push_back(std::move(jc));
  }
  out << j.dump(2) << "\n";
}

}  // namespace mirrorsim
