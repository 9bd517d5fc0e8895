// eom_core.hpp — Exact Heisenberg equations of motion in expectation form.
//
// These kernels evaluate the time derivative of expectation values of
// normal-ordered operator products for the Hamiltonian
//   H = sum_n w_n a_n^dag a_n + (O0/2) sigma^z
//       + sum_n g_n (a_n^dag + a_n) sigma^x - f(t) sigma^x,   f = mu E(t).
// No truncation happens here: contractions over moments one order above the
// evaluated family enter through precomputed inputs (W, T, U below), so the
// same kernels serve both the production closures and the exact-moment
// residual oracle.
//
// Moment symbols (all expectation values, not cumulants):
//   alpha_n = <a_n>                         S^i_n = <a_n^dag sigma^i>
//   Ae_nm = <a_n^dag a_m>                   Be_nm = <a_n^dag a_m^dag>
//   M^i_nm = <a_n^dag a_m sigma^i>          F^i_nm = <a_n^dag a_m^dag sigma^i>
//   Ge_nml = <a_n^dag a_m^dag a_l>          Ke_nml = <a_n^dag a_m^dag a_l^dag>
// Contracted higher-order inputs:
//   W^i_n  = sum_m g_m (F^i_nm + M^i_nm)
//   T^i_nm = sum_l g_l (<a_n^dag a_l^dag a_m sigma^i> + <a_n^dag a_l a_m sigma^i>)
//   U^i_nm = sum_l g_l (<a_n^dag a_l^dag a_m^dag sigma^i> + <a_n^dag a_m^dag a_l sigma^i>)
// wdiff/wsum are the precomputed phase arrays w_n -/+ w_m.
#pragma once

#include <complex>

#include <Eigen/Dense>

namespace cqed::eom::core {

using cxd = std::complex<double>;
inline constexpr cxd I{0.0, 1.0};

// d<sigma^i>/dt and d<a_n>/dt. Sy/Sz are <a_n^dag sigma^{y,z}>; the conjugate
// partners <a_n sigma^i> = conj(S^i_n) are folded in via the real parts.
inline void singles(double omega0, const Eigen::VectorXd& omega, const Eigen::VectorXd& g,
                    double f, double sx, double sy, double sz, const Eigen::VectorXcd& alpha,
                    const Eigen::VectorXcd& Sy, const Eigen::VectorXcd& Sz, double& dsx,
                    double& dsy, double& dsz, Eigen::VectorXcd& dalpha) {
    dsx = -omega0 * sy;
    dsy = omega0 * sx + 2.0 * f * sz - 4.0 * g.dot(Sz.real());
    dsz = -2.0 * f * sy + 4.0 * g.dot(Sy.real());
    dalpha = (-I) * (omega.array() * alpha.array()).matrix() - (I * sx) * g.cast<cxd>();
}

// d<a_n^dag sigma^i>/dt for i = x, y, z.
inline void pair_sigma(double omega0, const Eigen::VectorXd& omega, const Eigen::VectorXd& g,
                       double f, double sy, double sz, const Eigen::VectorXcd& Sx,
                       const Eigen::VectorXcd& Sy, const Eigen::VectorXcd& Sz,
                       const Eigen::VectorXcd& Wy, const Eigen::VectorXcd& Wz,
                       Eigen::VectorXcd& dSx, Eigen::VectorXcd& dSy, Eigen::VectorXcd& dSz) {
    dSx = I * (omega.array() * Sx.array()).matrix() - omega0 * Sy + I * g.cast<cxd>();
    dSy = I * (omega.array() * Sy.array()).matrix() + omega0 * Sx - sz * g.cast<cxd>() -
          2.0 * Wz + (2.0 * f) * Sz;
    dSz = I * (omega.array() * Sz.array()).matrix() + sy * g.cast<cxd>() + 2.0 * Wy -
          (2.0 * f) * Sy;
}

// d<a_n^dag a_m>/dt and d<a_n^dag a_m^dag>/dt.
inline void pair_boson(const Eigen::ArrayXXd& wdiff, const Eigen::ArrayXXd& wsum,
                       const Eigen::VectorXd& g, const Eigen::VectorXcd& Sx,
                       const Eigen::MatrixXcd& Ae, const Eigen::MatrixXcd& Be,
                       Eigen::MatrixXcd& dAe, Eigen::MatrixXcd& dBe) {
    const auto gv = g.cast<cxd>();
    dAe.noalias() = I * (gv * Sx.adjoint());
    dAe.noalias() -= I * (Sx * gv.transpose());
    dAe.array() += I * wdiff * Ae.array();
    dBe.noalias() = I * (gv * Sx.transpose());
    dBe.noalias() += I * (Sx * gv.transpose());
    dBe.array() += I * wsum * Be.array();
}

// d<a_n^dag a_m sigma^i>/dt (delta terms from normal ordering are already
// folded into the single-operator coefficients).
inline void triple_adas(double omega0, const Eigen::ArrayXXd& wdiff, const Eigen::VectorXd& g,
                        double f, const Eigen::VectorXcd& alpha, const Eigen::VectorXcd& Sy,
                        const Eigen::VectorXcd& Sz, const Eigen::MatrixXcd& Mx,
                        const Eigen::MatrixXcd& My, const Eigen::MatrixXcd& Mz,
                        const Eigen::MatrixXcd& Ty, const Eigen::MatrixXcd& Tz,
                        Eigen::MatrixXcd& dMx, Eigen::MatrixXcd& dMy, Eigen::MatrixXcd& dMz) {
    const auto gv = g.cast<cxd>();
    dMx.noalias() = I * (gv * alpha.transpose());
    dMx.noalias() -= I * (alpha.conjugate() * gv.transpose());
    dMx -= omega0 * My;
    dMx.array() += I * wdiff * Mx.array();
    dMy.noalias() = -(gv * Sz.adjoint());
    dMy.noalias() -= Sz * gv.transpose();
    dMy += omega0 * Mx - 2.0 * Tz + (2.0 * f) * Mz;
    dMy.array() += I * wdiff * My.array();
    dMz.noalias() = gv * Sy.adjoint();
    dMz.noalias() += Sy * gv.transpose();
    dMz += 2.0 * Ty - (2.0 * f) * My;
    dMz.array() += I * wdiff * Mz.array();
}

// Only the sigma^z member of the previous family (2+1a / 2+1b path).
inline void triple_adas_z(const Eigen::ArrayXXd& wdiff, const Eigen::VectorXd& g, double f,
                          const Eigen::VectorXcd& Sy, const Eigen::MatrixXcd& My,
                          const Eigen::MatrixXcd& Mz, const Eigen::MatrixXcd& Ty,
                          Eigen::MatrixXcd& dMz) {
    const auto gv = g.cast<cxd>();
    dMz.noalias() = gv * Sy.adjoint();
    dMz.noalias() += Sy * gv.transpose();
    dMz += 2.0 * Ty - (2.0 * f) * My;
    dMz.array() += I * wdiff * Mz.array();
}

// d<a_n^dag a_m^dag sigma^i>/dt.
inline void triple_adds(double omega0, const Eigen::ArrayXXd& wsum, const Eigen::VectorXd& g,
                        double f, const Eigen::VectorXcd& alpha, const Eigen::VectorXcd& Sy,
                        const Eigen::VectorXcd& Sz, const Eigen::MatrixXcd& Fx,
                        const Eigen::MatrixXcd& Fy, const Eigen::MatrixXcd& Fz,
                        const Eigen::MatrixXcd& Uy, const Eigen::MatrixXcd& Uz,
                        Eigen::MatrixXcd& dFx, Eigen::MatrixXcd& dFy, Eigen::MatrixXcd& dFz) {
    const auto gv = g.cast<cxd>();
    dFx.noalias() = I * (gv * alpha.adjoint());
    dFx.noalias() += I * (alpha.conjugate() * gv.transpose());
    dFx -= omega0 * Fy;
    dFx.array() += I * wsum * Fx.array();
    dFy.noalias() = -(gv * Sz.transpose());
    dFy.noalias() -= Sz * gv.transpose();
    dFy += omega0 * Fx - 2.0 * Uz + (2.0 * f) * Fz;
    dFy.array() += I * wsum * Fy.array();
    dFz.noalias() = gv * Sy.transpose();
    dFz.noalias() += Sy * gv.transpose();
    dFz += 2.0 * Uy - (2.0 * f) * Fy;
    dFz.array() += I * wsum * Fz.array();
}

// Slice (fixed annihilation index l) of d<a_n^dag a_m^dag a_l>/dt.
inline void triple_adda_slice(const Eigen::ArrayXXd& wsum, const Eigen::VectorXd& omega,
                              const Eigen::VectorXd& g, int l, const Eigen::MatrixXcd& Mx,
                              const Eigen::MatrixXcd& Fx,
                              const Eigen::Ref<const Eigen::MatrixXcd>& Ge_l,
                              Eigen::Ref<Eigen::MatrixXcd> dGe_l) {
    const auto gv = g.cast<cxd>();
    dGe_l.noalias() = I * (gv * Mx.col(l).transpose());
    dGe_l.noalias() += I * (Mx.col(l) * gv.transpose());
    dGe_l.noalias() -= (I * g[l]) * Fx;
    dGe_l.array() += I * (wsum - omega[l]) * Ge_l.array();
}

// Slice (fixed last dagger index l) of d<a_n^dag a_m^dag a_l^dag>/dt.
inline void triple_addd_slice(const Eigen::ArrayXXd& wsum, const Eigen::VectorXd& omega,
                              const Eigen::VectorXd& g, int l, const Eigen::MatrixXcd& Fx,
                              const Eigen::Ref<const Eigen::MatrixXcd>& Ke_l,
                              Eigen::Ref<Eigen::MatrixXcd> dKe_l) {
    const auto gv = g.cast<cxd>();
    dKe_l.noalias() = I * (gv * Fx.col(l).transpose());
    dKe_l.noalias() += I * (Fx.col(l) * gv.transpose());
    dKe_l.noalias() += (I * g[l]) * Fx;
    dKe_l.array() += I * (wsum + omega[l]) * Ke_l.array();
}

} // namespace cqed::eom::core
