#include "mirrorsim/master_equation.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace mirrorsim {

using namespace std::complex_literals;

StateCheck check_density_matrix(const Eigen::Matrix3cd& rho) {
  const Eigen::Matrix3cd herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> eig(herm, Eigen::EigenvaluesOnly);
  return StateCheck{
      .hermiticity_error = (rho - rho.adjoint()).norm(),
      .trace_error = std::abs(rho.trace() - 1.0),
      .min_eigenvalue = eig.eigenvalues().minCoeff(),
  };
}

Vector9cd vec(const Eigen::Matrix3cd& m) {
  Vector9cd v;
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) v(i + 3 * j) = m(i, j);
  return v;
}

Eigen::Matrix3cd unvec(const Vector9cd& v) {
  Eigen::Matrix3cd m;
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) m(i, j) = v(i + 3 * j);
  return m;
}

namespace {

// Adds the superoperator of the map rho -> A rho B to op, in the column-major
// vec convention: op(i+3j, k+3l) += A(i,k) B(l,j).
void add_product_term(Matrix9cd& op, const Eigen::Matrix3cd& a, const Eigen::Matrix3cd& b) {
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i)
      for (int l = 0; l < 3; ++l)
        for (int k = 0; k < 3; ++k) op(i + 3 * j, k + 3 * l) += a(i, k) * b(l, j);
}

}  // namespace

Eigen::Matrix3cd build_hamiltonian(const AtomParams& p, const RadiativeCorrection& rc,
                                   int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  Eigen::Matrix3cd h = Eigen::Matrix3cd::Zero();
  h(0, 0) = sign * p.delta1;
  h(1, 1) = sign * p.delta2;
  h(2, 2) = rc.shift;
  h(0, 2) = h(2, 0) = 0.5 * p.omega1;
  h(1, 2) = h(2, 1) = 0.5 * p.omega2;
  return h;
}

Liouvillian build_liouvillian(const AtomParams& p, const RadiativeCorrection& rc,
                              int sign) {
  if (rc.gamma_bar_1 < 0.0) fail(Errc::NonPositiveRate, "gamma_bar_1 must be >= 0");
  if (rc.gamma_bar_2 <= 0.0) fail(Errc::NonPositiveRate, "gamma_bar_2 must be > 0");

  const Eigen::Matrix3cd identity = Eigen::Matrix3cd::Identity();
  Eigen::Matrix3cd h_cond = build_hamiltonian(p, rc, sign);
  h_cond(2, 2) -= 0.5i * (rc.gamma_bar_1 + rc.gamma_bar_2);

  Liouvillian li;
  li.op.setZero();
  // -i (H_cond rho - rho H_cond^dagger)
  add_product_term(li.op, -1.0i * h_cond, identity);
  add_product_term(li.op, identity, 1.0i * h_cond.adjoint());
  // Refill of the ground states: sum_j gb_j |j><3| rho |3><j|.
  for (int j = 0; j < 2; ++j) {
    const double rate = (j == 0) ? rc.gamma_bar_1 : rc.gamma_bar_2;
    Eigen::Matrix3cd lower = Eigen::Matrix3cd::Zero();
    lower(j, 2) = 1.0;
    add_product_term(li.op, rate * lower, lower.adjoint());
  }

  const auto [db1, db2] = effective_detunings(p, rc);
  li.rate_scale = std::max({p.gamma1, p.omega1, p.omega2, std::fabs(db1), std::fabs(db2)});
  return li;
}

DensityMatrix3 steady_state(const Liouvillian& li) {
  // The three rows generating the diagonal of rho-dot sum to zero (trace
  // preservation), so one of them is redundant; replace it with the trace
  // constraint to get a square, generically nonsingular system.
  Matrix9cd a = li.op;
  a.row(0).setZero();
  a(0, 0) = a(0, 4) = a(0, 8) = 1.0;
  Vector9cd b = Vector9cd::Zero();
  b(0) = 1.0;

  Eigen::FullPivLU<Matrix9cd> lu(a);
  if (!lu.isInvertible()) {
    fail(Errc::DegenerateNullSpace,
         "stationary state is not unique (degenerate Liouvillian null space)");
  }
  Eigen::Matrix3cd rho = unvec(lu.solve(b));
  // Strip roundoff asymmetry and renormalize the trace exactly.
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  return DensityMatrix3{rho};
}

DensityMatrix3 propagate(const Liouvillian& li, const DensityMatrix3& rho0, double t,
                         double dt) {
  if (!(t >= 0.0) || !(dt > 0.0)) throw std::invalid_argument("need t >= 0 and dt > 0");
  if (li.rate_scale > 0.0 && dt > 0.01 / li.rate_scale * (1.0 + 1e-12)) {
    fail(Errc::StepTooLarge, "dt exceeds 0.01 / max(gamma1, omega_j, |dbar_j|)");
  }
  if (t == 0.0) return rho0;

  const long steps = std::max(1L, static_cast<long>(std::ceil(t / dt - 1e-12)));
  const double h = t / static_cast<double>(steps);
  Vector9cd v = vec(rho0.rho);
  for (long s = 0; s < steps; ++s) {
    const Vector9cd k1 = li.op * v;
    const Vector9cd k2 = li.op * (v + 0.5 * h * k1);
    const Vector9cd k3 = li.op * (v + 0.5 * h * k2);
    const Vector9cd k4 = li.op * (v + h * k3);
    v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return DensityMatrix3{unvec(v)};
}

int calibrate_sign(const AtomParams& p, const RadiativeCorrection& rc) {
  const double target = p3_closed_detail(p, rc).value;
  bool matches[2] = {false, false};
  const int signs[2] = {+1, -1};
  for (int i = 0; i < 2; ++i) {
    try {
      const DensityMatrix3 rho = steady_state(build_liouvillian(p, rc, signs[i]));
      matches[i] = std::fabs(rho.p3() - target) < 1e-8;
    } catch (const SimError&) {
      matches[i] = false;  // degenerate solve cannot vote
    }
  }
  if (matches[0] == matches[1]) {
    fail(Errc::CalibrationAmbiguous,
         matches[0] ? "both detuning signs reproduce the closed form at this point"
                    : "neither detuning sign reproduces the closed form at this point");
  }
  return matches[0] ? +1 : -1;
}

int calibrated_detuning_sign() {
  // Asymmetric drive, distinct detunings, and a quarter-wavelength distance
  // where the level shift is large: the two sign choices differ by ~1e-2 in
  // p3 here, far above the 1e-8 decision threshold.
  static const int sign = [] {
    const AtomParams reference{.omega1 = 10.0, .omega2 = 5.0, .delta1 = 2.0,
                               .delta2 = 0.0, .gamma1 = 15.1, .gamma2 = 5.4};
    const MirrorConfig at_quarter_wave{.r = 0.25, .k31 = kTwoPi};
    return calibrate_sign(reference, radiative_correction(at_quarter_wave, reference));
  }();
  return sign;
}

}  // namespace mirrorsim
