#include "lgcp/spin_core.hpp"

#include <numbers>
#include <sstream>
#include <stdexcept>

namespace lgcp {

namespace {

using Matrix2 = Eigen::Matrix2cd;

ComplexMatrix4 kron(const Matrix2& a, const Matrix2& b) {
  ComplexMatrix4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

}  // namespace

SpinOperatorSet build_operators() {
  const Complex i1(0.0, 1.0);
  Matrix2 px, py, pz, e;
  px << 0.0, 0.5, 0.5, 0.0;
  py << 0.0, -0.5 * i1, 0.5 * i1, 0.0;
  pz << 0.5, 0.0, 0.0, -0.5;
  e.setIdentity();

  SpinOperatorSet ops;
  ops.ix = kron(px, e);
  ops.iy = kron(py, e);
  ops.iz = kron(pz, e);
  ops.iplus = ops.ix + i1 * ops.iy;
  ops.iminus = ops.ix - i1 * ops.iy;
  ops.sx = kron(e, px);
  ops.sy = kron(e, py);
  ops.sz = kron(e, pz);
  ops.splus = ops.sx + i1 * ops.sy;
  ops.sminus = ops.sx - i1 * ops.sy;
  ops.izsz = 2.0 * ops.iz * ops.sz;
  ops.identity = ComplexMatrix4::Identity();
  return ops;
}

const SpinOperatorSet& spin_operators() {
  static const SpinOperatorSet ops = build_operators();
  return ops;
}

double hermiticity_error(const ComplexMatrix4& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_error(const ComplexMatrix4& u) {
  return (u.adjoint() * u - ComplexMatrix4::Identity()).cwiseAbs().maxCoeff();
}

ComplexMatrix4 matrix_exponential(const ComplexMatrix4& h, double dt) {
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  const double herr = hermiticity_error(h);
  if (herr > 1e-12 * scale) {
    std::ostringstream msg;
    msg << "matrix_exponential: generator is not Hermitian (max |H - H^dagger| = "
        << herr << ")";
    throw std::invalid_argument(msg.str());
  }
  // Symmetrize so the solver sees an exactly self-adjoint input.
  const ComplexMatrix4 hs = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix4> eig(hs);
  const auto& w = eig.eigenvalues();
  const auto& v = eig.eigenvectors();
  Eigen::Vector4cd phase;
  for (int k = 0; k < 4; ++k)
    phase(k) = std::polar(1.0, -2.0 * std::numbers::pi * w(k) * dt);
  return v * phase.asDiagonal() * v.adjoint();
}

ComplexMatrix4 evolve(const ComplexMatrix4& rho, const ComplexMatrix4& u) {
  return u * rho * u.adjoint();
}

double expectation(const ComplexMatrix4& rho, const ComplexMatrix4& op) {
  // tr(A B) = sum_ij A_ij B_ji
  return (rho.array() * op.transpose().array()).sum().real();
}

}  // namespace lgcp
