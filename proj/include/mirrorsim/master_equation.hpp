// Independent numerical route to the same physics as the closed form: the
// rotating-frame Lindblad master equation of the mirror-coupled Lambda atom,
// vectorized into a 9x9 Liouvillian, with a direct steady-state solver, an
// RK4 propagator, and the calibration that fixes the detuning sign convention
// against the closed form.
#pragma once

#include <Eigen/Dense>

#include "mirrorsim/steady_closed.hpp"

namespace mirrorsim {

using Matrix9cd = Eigen::Matrix<std::complex<double>, 9, 9>;
using Vector9cd = Eigen::Matrix<std::complex<double>, 9, 1>;

// Density matrix in the basis |1>, |2>, |3|. A valid state is Hermitian,
// unit-trace and positive semidefinite; check_density_matrix quantifies how
// well a computed matrix satisfies that.
struct DensityMatrix3 {
  Eigen::Matrix3cd rho;

  double p3() const { return rho(2, 2).real(); }
};

struct StateCheck {
  double hermiticity_error;  // Frobenius norm of rho - rho^dagger
  double trace_error;        // |tr rho - 1|
  double min_eigenvalue;     // of the Hermitized matrix (rho + rho^dagger)/2

  bool ok() const {
    return hermiticity_error < 1e-12 && trace_error < 1e-12 && min_eigenvalue > -1e-10;
  }
};

StateCheck check_density_matrix(const Eigen::Matrix3cd& rho);

// Column-major vectorization: vec(rho)(i + 3j) = rho(i, j), and its inverse.
Vector9cd vec(const Eigen::Matrix3cd& m);
Eigen::Matrix3cd unvec(const Vector9cd& v);

// Generator of the master equation acting on vec(rho):
//   d vec(rho)/dt = op * vec(rho).
struct Liouvillian {
  Matrix9cd op;
  double rate_scale;  // max of gamma1, omega1, omega2, |dbar1|, |dbar2|;
                      // sets the largest stable propagation step
};

// Hermitian rotating-frame Hamiltonian: drives (omega_j/2) on 3-j, the
// mirror-induced shift on |3><3| and sign*delta_j on the ground states. The
// overall sign of the detuning terms is a convention the printed equations
// leave open; calibrate_sign resolves it (it comes out +1).
Eigen::Matrix3cd build_hamiltonian(const AtomParams& p, const RadiativeCorrection& rc,
                                   int sign);

// Full generator: coherent part from the Hamiltonian, the non-Hermitian decay
// -(i/2)(gb1+gb2){|3><3|, rho}, and the refill terms gb_j |j><3| rho |3><j|.
Liouvillian build_liouvillian(const AtomParams& p, const RadiativeCorrection& rc,
                              int sign);

// Unique stationary state, from the trace-normalized null vector of op. The
// redundant row of op (its diagonal rows sum to zero by trace preservation)
// is replaced by the trace constraint and the square system solved by pivoted
// LU. Throws DegenerateNullSpace when the stationary state is not unique
// (e.g. no driving at all).
DensityMatrix3 steady_state(const Liouvillian& li);

// Classic fixed-step RK4 on vec(rho) for duration t. The step is refused
// (StepTooLarge) above 0.01/rate_scale, which keeps RK4 deep inside its
// stability region and the per-step error at roundoff level.
DensityMatrix3 propagate(const Liouvillian& li, const DensityMatrix3& rho0, double t,
                         double dt);

// Determines the detuning sign convention by solving the master equation both
// ways at a reference point and keeping the sign that reproduces the closed
// form to 1e-8. The reference must discriminate: it needs delta1 != delta2
// (no dark state) and a nonzero shift, otherwise both signs match and
// CalibrationAmbiguous is thrown.
int calibrate_sign(const AtomParams& p, const RadiativeCorrection& rc);

// Sign convention established once per process at a fixed asymmetric
// reference point; used by every Liouvillian cross-check in sweeps.
int calibrated_detuning_sign();

}  // namespace mirrorsim
