#include "cqed/eom.hpp"

#include <cmath>

#include "cqed/eom_core.hpp"
#include "cqed/errors.hpp"

namespace cqed::eom {

using moments::AxisX;
using moments::AxisY;
using moments::AxisZ;
using moments::MatView;
using moments::MomentState;
using moments::Order;
using cxd = std::complex<double>;

Method Method::order2(Closure c) { return {Order::Two, c}; }

void Method::validate() const {
    if (closure == Closure::ZeroExpectation && order != Order::Two)
        throw ConfigError("ZeroExpectation closure is only defined for the second-order method");
}

double drive_scalar(const SystemParams& params, double t) {
    return drive::mu_field(params.pulse, t);
}

RhsEvaluator::RhsEvaluator(const SystemParams& params, Method method)
    : params_(params), method_(method) {
    method_.validate();
    const int n = params_.modes.size();
    omega_ = Eigen::Map<const Eigen::VectorXd>(params_.modes.omega.data(), n);
    g_ = Eigen::Map<const Eigen::VectorXd>(params_.modes.g.data(), n);
    const Order o = method_.order;
    Sx_.resize(n); Sy_.resize(n); Sz_.resize(n);
    dalpha_.resize(n);
    if (moments::has_pairs(o)) {
        dSx_.resize(n); dSy_.resize(n); dSz_.resize(n);
        Wy_.resize(n); Wz_.resize(n);
        vAg_.resize(n); vBg_.resize(n);
        Ae_.resize(n, n); Be_.resize(n, n); dAe_.resize(n, n); dBe_.resize(n, n);
        wdiff_ = omega_.replicate(1, n).array() - omega_.transpose().replicate(n, 1).array();
        wsum_ = omega_.replicate(1, n).array() + omega_.transpose().replicate(n, 1).array();
    }
    if (moments::has_adas_z(o)) {
        M_[AxisY].resize(n, n); M_[AxisZ].resize(n, n);
        dM_[AxisZ].resize(n, n);
        Ty_.resize(n, n);
    }
    if (moments::has_third(o)) {
        M_[AxisX].resize(n, n); dM_[AxisX].resize(n, n); dM_[AxisY].resize(n, n);
        for (int i = 0; i < 3; ++i) { F_[i].resize(n, n); dF_[i].resize(n, n); }
        Tz_.resize(n, n); Uy_.resize(n, n); Uz_.resize(n, n);
        P1_.resize(n, n); P3_.resize(n, n); P4_.resize(n, n);
        for (int i : {AxisY, AxisZ}) { vDg_[i].resize(n); vFg_[i].resize(n); }
    }
}

void RhsEvaluator::operator()(double t, const MomentState& state, MomentState& deriv) {
    const int n = params_.modes.size();
    if (state.n_modes() != n || state.order() != method_.order ||
        deriv.n_modes() != n || deriv.order() != method_.order)
        throw ShapeMismatch("rhs: state/derivative shape does not match the method and modes");
    const double sx = state.sx(), sy = state.sy(), sz = state.sz();
    if (!(std::isfinite(sx) && std::isfinite(sy) && std::isfinite(sz)) ||
        !state.a().allFinite())
        throw NonFiniteInput("rhs: non-finite input state");
    const double f = drive::mu_field(params_.pulse, t);
    const Order order = method_.order;

    auto alpha = state.a();
    const Eigen::VectorXcd abar = alpha.conjugate();

    // --- <a_n^dag sigma^i> expectations ---------------------------------
    if (order == Order::MF) {
        Sy_ = abar * sy;
        Sz_ = abar * sz;
    } else {
        Sx_ = abar * sx + state.ads(AxisX);
        Sy_ = abar * sy + state.ads(AxisY);
        Sz_ = abar * sz + state.ads(AxisZ);
    }

    double dsx, dsy, dsz;
    core::singles(params_.omega0, omega_, g_, f, sx, sy, sz, alpha, Sy_, Sz_, dsx, dsy, dsz,
                  dalpha_);
    deriv.sx() = dsx;
    deriv.sy() = dsy;
    deriv.sz() = dsz;
    deriv.a() = dalpha_;
    if (order == Order::MF) return;

    const Eigen::VectorXcd dabar = dalpha_.conjugate();
    const Eigen::VectorXcd Cx = state.ads(AxisX);
    const Eigen::VectorXcd Cy = state.ads(AxisY);
    const Eigen::VectorXcd Cz = state.ads(AxisZ);
    auto A = state.ada();
    auto B = state.add();
    const Eigen::VectorXcd gv = g_.cast<cxd>();

    Ae_.noalias() = abar * alpha.transpose();
    Ae_ += A;
    Be_.noalias() = abar * abar.transpose();
    Be_ += B;
    vAg_.noalias() = A * gv;
    vBg_.noalias() = B * gv;
    const cxd gA1 = alpha.cwiseProduct(gv).sum();
    const cxd gCy = Cy.cwiseProduct(gv).sum();
    const cxd gCz = Cz.cwiseProduct(gv).sum();

    // --- order-3 expectation blocks (needed before the pair stage) ------
    if (moments::has_third(order)) {
        for (int i = 0; i < 3; ++i) {
            const double si = state.pauli(i);
            const Eigen::VectorXcd Ci = state.ads(i);
            M_[i].noalias() = (abar * alpha.transpose()) * si;
            M_[i].noalias() += abar * Ci.adjoint();
            M_[i].noalias() += Ci * alpha.transpose();
            M_[i] += si * A + state.adas(i);
            F_[i].noalias() = (abar * abar.transpose()) * si;
            F_[i].noalias() += abar * Ci.transpose();
            F_[i].noalias() += Ci * abar.transpose();
            F_[i] += si * B + state.adds(i);
        }
    } else if (moments::has_adas_z(order)) {
        M_[AxisZ].noalias() = (abar * alpha.transpose()) * sz;
        M_[AxisZ].noalias() += abar * Cz.adjoint();
        M_[AxisZ].noalias() += Cz * alpha.transpose();
        M_[AxisZ] += sz * A + state.adas(AxisZ);
        M_[AxisY].noalias() = (abar * alpha.transpose()) * sy;
        M_[AxisY].noalias() += abar * Cy.adjoint();
        M_[AxisY].noalias() += Cy * alpha.transpose();
        M_[AxisY] += sy * A;
    }

    // --- W contractions (closure of the pair equations) ------------------
    if (order == Order::Two && method_.closure == Closure::ZeroExpectation) {
        Wy_.setZero();
        Wz_.setZero();
    } else if (moments::has_third(order)) {
        Wy_.noalias() = (M_[AxisY] + F_[AxisY]) * gv;
        Wz_.noalias() = (M_[AxisZ] + F_[AxisZ]) * gv;
    } else {
        const double re_gA1 = 2.0 * gA1.real();
        Wy_ = (re_gA1 * sy + 2.0 * gCy.real()) * abar + re_gA1 * Cy + sy * (vAg_ + vBg_);
        Wz_ = (re_gA1 * sz + 2.0 * gCz.real()) * abar + re_gA1 * Cz + sz * (vAg_ + vBg_);
        if (moments::has_adas_z(order)) Wz_.noalias() += state.adas(AxisZ) * gv;
    }

    // --- pair stage -------------------------------------------------------
    core::pair_sigma(params_.omega0, omega_, g_, f, sy, sz, Sx_, Sy_, Sz_, Wy_, Wz_, dSx_, dSy_,
                     dSz_);
    core::pair_boson(wdiff_, wsum_, g_, Sx_, Ae_, Be_, dAe_, dBe_);

    deriv.ads(AxisX) = dSx_ - dabar * sx - abar * dsx;
    deriv.ads(AxisY) = dSy_ - dabar * sy - abar * dsy;
    deriv.ads(AxisZ) = dSz_ - dabar * sz - abar * dsz;
    {
        MatView dA = deriv.ada();
        dA = dAe_;
        dA.noalias() -= dabar * alpha.transpose();
        dA.noalias() -= abar * dalpha_.transpose();
        MatView dB = deriv.add();
        dB = dBe_;
        dB.noalias() -= dabar * abar.transpose();
        dB.noalias() -= abar * dabar.transpose();
    }
    if (order == Order::Two) return;

    const Eigen::VectorXcd dCx = deriv.ads(AxisX);
    const Eigen::VectorXcd dCy = deriv.ads(AxisY);
    const Eigen::VectorXcd dCz = deriv.ads(AxisZ);
    auto dA = deriv.ada();
    auto dB = deriv.add();
    const double ds[3] = {dsx, dsy, dsz};
    const Eigen::VectorXcd* Cvec[3] = {&Cx, &Cy, &Cz};
    const Eigen::VectorXcd* dCvec[3] = {&dCx, &dCy, &dCz};
    const double svec[3] = {sx, sy, sz};

    // d<..>_c = d<..> minus the product-rule terms of the cumulant expansion
    auto chain_adas = [&](int i, const Eigen::MatrixXcd& dMe, MatView out) {
        const Eigen::VectorXcd& Ci = *Cvec[i];
        const Eigen::VectorXcd& dCi = *dCvec[i];
        out = dMe;
        out.noalias() -= (dabar * alpha.transpose()) * svec[i];
        out.noalias() -= (abar * dalpha_.transpose()) * svec[i];
        out.noalias() -= (abar * alpha.transpose()) * ds[i];
        out.noalias() -= dabar * Ci.adjoint();
        out.noalias() -= abar * dCi.adjoint();
        out.noalias() -= dCi * alpha.transpose();
        out.noalias() -= Ci * dalpha_.transpose();
        out -= ds[i] * A + svec[i] * dA;
    };
    auto chain_adds = [&](int i, const Eigen::MatrixXcd& dFe, MatView out) {
        const Eigen::VectorXcd& Ci = *Cvec[i];
        const Eigen::VectorXcd& dCi = *dCvec[i];
        out = dFe;
        out.noalias() -= (dabar * abar.transpose()) * svec[i];
        out.noalias() -= (abar * dabar.transpose()) * svec[i];
        out.noalias() -= (abar * abar.transpose()) * ds[i];
        out.noalias() -= dabar * Ci.transpose();
        out.noalias() -= abar * dCi.transpose();
        out.noalias() -= dCi * abar.transpose();
        out.noalias() -= Ci * dabar.transpose();
        out -= ds[i] * B + svec[i] * dB;
    };

    if (!moments::has_third(order)) {
        // 2+1a / 2+1b: only the adas_z correlation equation is added.
        if (order == Order::TwoPlusOneA) {
            const double re_gA1 = 2.0 * gA1.real();
            const Eigen::VectorXcd vABg = vAg_ + vBg_;
            const Eigen::VectorXcd Cybar = Cy.conjugate();
            Ty_.noalias() = (abar * alpha.transpose()) * (re_gA1 * sy);
            Ty_.noalias() += (abar * Cybar.transpose()) * re_gA1;
            Ty_ += (re_gA1 * sy) * A;
            Ty_.noalias() += (Cy * alpha.transpose()) * re_gA1;
            Ty_.noalias() += vABg * (sy * alpha + Cybar).transpose();
            Ty_ += (2.0 * gCy.real()) * Ae_;
            Ty_.noalias() += (sy * abar + Cy) * vABg.adjoint();
        } else {
            Ty_.setZero();
        }
        core::triple_adas_z(wdiff_, g_, f, Sy_, M_[AxisY], M_[AxisZ], Ty_, dM_[AxisZ]);
        chain_adas(AxisZ, dM_[AxisZ], deriv.adas(AxisZ));
        return;
    }

    // --- full third order --------------------------------------------------
    auto G = state.adda();
    auto K = state.addd();
    // contractions of the rank-3 cumulants (serial: fixed summation order)
    P3_.setZero();
    for (int s = 0; s < n; ++s) {
        auto Gs = G.slice(s);
        P1_.col(s).noalias() = Gs * gv;
        P3_.noalias() += g_[s] * Gs;
    }
    P4_.setZero();
    for (int s = 0; s < n; ++s) P4_.noalias() += g_[s] * K.slice(s);

    for (int i : {AxisY, AxisZ}) {
        vDg_[i].noalias() = state.adas(i) * gv;
        vFg_[i].noalias() = state.adds(i) * gv;
    }

    const double re_gA1 = 2.0 * gA1.real();
    const Eigen::VectorXcd vABg = vAg_ + vBg_;
    auto build_TU = [&](int i, Eigen::MatrixXcd& T, Eigen::MatrixXcd& U) {
        const double si = svec[i];
        const Eigen::VectorXcd& Ci = *Cvec[i];
        const Eigen::VectorXcd Cibar = Ci.conjugate();
        const cxd gCi = Ci.cwiseProduct(gv).sum();
        const Eigen::VectorXcd vDFg = vDg_[i] + vFg_[i];
        T.noalias() = (abar * alpha.transpose()) * (re_gA1 * si);
        T.noalias() += (abar * Cibar.transpose()) * re_gA1;
        T += (re_gA1 * si) * A + re_gA1 * state.adas(i) + (2.0 * gCi.real()) * Ae_;
        T.noalias() += (Ci * alpha.transpose()) * re_gA1;
        T.noalias() += vABg * (si * alpha + Cibar).transpose();
        T.noalias() += (si * abar + Ci) * vABg.adjoint();
        T.noalias() += abar * vDFg.adjoint();
        T.noalias() += vDFg * alpha.transpose();
        T += si * (P1_ + P1_.adjoint());
        U.noalias() = (abar * abar.transpose()) * (re_gA1 * si);
        U += (re_gA1 * si) * B + re_gA1 * state.adds(i) + (2.0 * gCi.real()) * Be_;
        U.noalias() += (abar * Ci.transpose()) * re_gA1;
        U.noalias() += (Ci * abar.transpose()) * re_gA1;
        U.noalias() += vABg * (si * abar + Ci).transpose();
        U.noalias() += (si * abar + Ci) * vABg.transpose();
        U.noalias() += abar * vDFg.transpose();
        U.noalias() += vDFg * abar.transpose();
        U += si * (P3_ + P4_);
    };
    build_TU(AxisY, Ty_, Uy_);
    build_TU(AxisZ, Tz_, Uz_);

    core::triple_adas(params_.omega0, wdiff_, g_, f, alpha, Sy_, Sz_, M_[AxisX], M_[AxisY],
                      M_[AxisZ], Ty_, Tz_, dM_[AxisX], dM_[AxisY], dM_[AxisZ]);
    core::triple_adds(params_.omega0, wsum_, g_, f, alpha, Sy_, Sz_, F_[AxisX], F_[AxisY],
                      F_[AxisZ], Uy_, Uz_, dF_[AxisX], dF_[AxisY], dF_[AxisZ]);
    for (int i = 0; i < 3; ++i) {
        chain_adas(i, dM_[i], deriv.adas(i));
        chain_adds(i, dF_[i], deriv.adds(i));
    }

    // rank-3 blocks, slice by slice over the non-dagger (adda) / last (addd) index
    auto dG = deriv.adda();
    auto dK = deriv.addd();
    const Eigen::MatrixXcd outer_abar_abar = abar * abar.transpose();
    Eigen::MatrixXcd d_outer_abar = dabar * abar.transpose();
    d_outer_abar.noalias() += abar * dabar.transpose();
    const Eigen::MatrixXcd dAmat = dA;
    const Eigen::MatrixXcd dBmat = dB;
#pragma omp parallel
    {
        Eigen::MatrixXcd se(n, n), sd(n, n);
#pragma omp for schedule(static)
        for (int l = 0; l < n; ++l) {
            // adda slice: Ge_l = abar abar^T alpha_l + abar A(:,l)^T + A(:,l) abar^T
            //                    + alpha_l B + G_l
            se.noalias() = outer_abar_abar * alpha[l];
            se.noalias() += abar * A.col(l).transpose();
            se.noalias() += A.col(l) * abar.transpose();
            se += alpha[l] * B;
            se += G.slice(l);
            core::triple_adda_slice(wsum_, omega_, g_, l, M_[AxisX], F_[AxisX], se, sd);
            {
                auto out = dG.slice(l);
                out = sd;
                out.noalias() -= d_outer_abar * alpha[l];
                out.noalias() -= outer_abar_abar * dalpha_[l];
                out.noalias() -= dabar * A.col(l).transpose();
                out.noalias() -= abar * dAmat.col(l).transpose();
                out.noalias() -= dAmat.col(l) * abar.transpose();
                out.noalias() -= A.col(l) * dabar.transpose();
                out -= dalpha_[l] * B + alpha[l] * dBmat;
            }
            // addd slice: Ke_l = abar abar^T abar_l + abar B(:,l)^T + B(:,l) abar^T
            //                    + abar_l B + K_l
            se.noalias() = outer_abar_abar * abar[l];
            se.noalias() += abar * B.col(l).transpose();
            se.noalias() += B.col(l) * abar.transpose();
            se += abar[l] * B;
            se += K.slice(l);
            core::triple_addd_slice(wsum_, omega_, g_, l, F_[AxisX], se, sd);
            {
                auto out = dK.slice(l);
                out = sd;
                out.noalias() -= d_outer_abar * abar[l];
                out.noalias() -= outer_abar_abar * dabar[l];
                out.noalias() -= dabar * B.col(l).transpose();
                out.noalias() -= abar * dBmat.col(l).transpose();
                out.noalias() -= dBmat.col(l) * abar.transpose();
                out.noalias() -= B.col(l) * dabar.transpose();
                out -= dabar[l] * B + abar[l] * dBmat;
            }
        }
    }
}

// --- raw second-order interface -------------------------------------------

RawState2 RawState2::zero(int n) {
    RawState2 s;
    s.alpha = Eigen::VectorXcd::Zero(n);
    s.Sx = Eigen::VectorXcd::Zero(n);
    s.Sy = Eigen::VectorXcd::Zero(n);
    s.Sz = Eigen::VectorXcd::Zero(n);
    s.Ae = Eigen::MatrixXcd::Zero(n, n);
    s.Be = Eigen::MatrixXcd::Zero(n, n);
    return s;
}

RawState2 rhs_raw2(const RawState2& s, const SystemParams& params, Closure closure, double t) {
    const int n = params.modes.size();
    if (s.alpha.size() != n) throw ShapeMismatch("rhs_raw2: state size != number of modes");
    Eigen::VectorXd omega = Eigen::Map<const Eigen::VectorXd>(params.modes.omega.data(), n);
    Eigen::VectorXd g = Eigen::Map<const Eigen::VectorXd>(params.modes.g.data(), n);
    const double f = drive::mu_field(params.pulse, t);
    const Eigen::VectorXcd gv = g.cast<cxd>();

    RawState2 d = RawState2::zero(n);
    core::singles(params.omega0, omega, g, f, s.sx, s.sy, s.sz, s.alpha, s.Sy, s.Sz, d.sx, d.sy,
                  d.sz, d.alpha);

    Eigen::VectorXcd Wy = Eigen::VectorXcd::Zero(n), Wz = Eigen::VectorXcd::Zero(n);
    if (closure == Closure::ZeroCumulant) {
        // three-operator expectations rebuilt from singles and pair cumulants
        const Eigen::VectorXcd abar = s.alpha.conjugate();
        const Eigen::MatrixXcd A = s.Ae - abar * s.alpha.transpose();
        const Eigen::MatrixXcd B = s.Be - abar * abar.transpose();
        const Eigen::VectorXcd Cy = s.Sy - abar * s.sy;
        const Eigen::VectorXcd Cz = s.Sz - abar * s.sz;
        const cxd gA1 = s.alpha.cwiseProduct(gv).sum();
        const double re_gA1 = 2.0 * gA1.real();
        const Eigen::VectorXcd vABg = (A + B) * gv;
        const cxd gCy = Cy.cwiseProduct(gv).sum();
        const cxd gCz = Cz.cwiseProduct(gv).sum();
        Wy = (re_gA1 * s.sy + 2.0 * gCy.real()) * abar + re_gA1 * Cy + s.sy * vABg;
        Wz = (re_gA1 * s.sz + 2.0 * gCz.real()) * abar + re_gA1 * Cz + s.sz * vABg;
    }
    core::pair_sigma(params.omega0, omega, g, f, s.sy, s.sz, s.Sx, s.Sy, s.Sz, Wy, Wz, d.Sx, d.Sy,
                     d.Sz);
    Eigen::ArrayXXd wdiff =
        omega.replicate(1, n).array() - omega.transpose().replicate(n, 1).array();
    Eigen::ArrayXXd wsum =
        omega.replicate(1, n).array() + omega.transpose().replicate(n, 1).array();
    core::pair_boson(wdiff, wsum, g, s.Sx, s.Ae, s.Be, d.Ae, d.Be);
    return d;
}

RawState2 to_raw(const MomentState& s) {
    if (!moments::has_pairs(s.order()))
        throw ShapeMismatch("to_raw: state does not carry second-order blocks");
    RawState2 r;
    r.sx = s.sx();
    r.sy = s.sy();
    r.sz = s.sz();
    r.alpha = s.a();
    const Eigen::VectorXcd abar = r.alpha.conjugate();
    r.Sx = abar * r.sx + s.ads(AxisX);
    r.Sy = abar * r.sy + s.ads(AxisY);
    r.Sz = abar * r.sz + s.ads(AxisZ);
    r.Ae = abar * r.alpha.transpose() + s.ada();
    r.Be = abar * abar.transpose() + s.add();
    return r;
}

void raw_to_cumulant_derivative(const MomentState& s, const RawState2& draw, MomentState& deriv) {
    const Eigen::VectorXcd alpha = s.a();
    const Eigen::VectorXcd abar = alpha.conjugate();
    const Eigen::VectorXcd dabar = draw.alpha.conjugate();
    deriv.sx() = draw.sx;
    deriv.sy() = draw.sy;
    deriv.sz() = draw.sz;
    deriv.a() = draw.alpha;
    deriv.ads(AxisX) = draw.Sx - dabar * s.sx() - abar * draw.sx;
    deriv.ads(AxisY) = draw.Sy - dabar * s.sy() - abar * draw.sy;
    deriv.ads(AxisZ) = draw.Sz - dabar * s.sz() - abar * draw.sz;
    deriv.ada() = draw.Ae - dabar * alpha.transpose() - abar * draw.alpha.transpose();
    deriv.add() = draw.Be - dabar * abar.transpose() - abar * dabar.transpose();
}

} // namespace cqed::eom
