// Two-spin-1/2 operator algebra and propagation primitives.
//
// Product basis ordering (I spin first): |uu>, |ud>, |du>, |dd>, where
// u/d are the +1/2 and -1/2 Zeeman states. All Hamiltonians are carried in
// Hz; the single 2*pi conversion happens in matrix_exponential().

#ifndef LGCP_SPIN_CORE_HPP
#define LGCP_SPIN_CORE_HPP

#include <Eigen/Dense>

#include <complex>

namespace lgcp {

using Complex = std::complex<double>;
using ComplexMatrix4 = Eigen::Matrix4cd;

struct SpinOperatorSet {
  ComplexMatrix4 ix, iy, iz, iplus, iminus;
  ComplexMatrix4 sx, sy, sz, splus, sminus;
  ComplexMatrix4 izsz;  // 2*Iz*Sz
  ComplexMatrix4 identity;
};

SpinOperatorSet build_operators();

/// Shared immutable instance; built on first use.
const SpinOperatorSet& spin_operators();

/// Largest elementwise |M - M^dagger|.
double hermiticity_error(const ComplexMatrix4& m);

/// Largest elementwise |U^dagger U - 1|.
double unitarity_error(const ComplexMatrix4& u);

/// U = exp(-i * 2*pi * h * dt) for a Hermitian h in Hz and dt in seconds.
///
/// Uses the Hermitian eigendecomposition of h. Throws std::invalid_argument
/// if h deviates from Hermitian by more than 1e-12 * max(1, max|h_ij|).
ComplexMatrix4 matrix_exponential(const ComplexMatrix4& h, double dt);

/// rho -> U rho U^dagger
ComplexMatrix4 evolve(const ComplexMatrix4& rho, const ComplexMatrix4& u);

/// Re tr(rho * op)
double expectation(const ComplexMatrix4& rho, const ComplexMatrix4& op);

}  // namespace lgcp

#endif  // LGCP_SPIN_CORE_HPP
