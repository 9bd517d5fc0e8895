// eom.hpp — Time derivative of a MomentState for each truncation method.
#pragma once

#include <Eigen/Dense>

#include "cqed/drive.hpp"
#include "cqed/moments.hpp"
#include "cqed/spectral.hpp"

namespace cqed::eom {

enum class Closure { ZeroCumulant, ZeroExpectation };

struct Method {
    moments::Order order{moments::Order::Two};
    Closure closure{Closure::ZeroCumulant}; // meaningful for Order::Two only

    static Method mf() { return {moments::Order::MF, Closure::ZeroCumulant}; }
    static Method order2(Closure c = Closure::ZeroCumulant);
    static Method two_plus_one_a() { return {moments::Order::TwoPlusOneA, Closure::ZeroCumulant}; }
    static Method two_plus_one_b() { return {moments::Order::TwoPlusOneB, Closure::ZeroCumulant}; }
    static Method order3() { return {moments::Order::Three, Closure::ZeroCumulant}; }

    void validate() const;
};

struct SystemParams {
    double omega0{0.0}; // emitter transition frequency, eV
    spectral::DiscreteModes modes;
    drive::DrivePulse pulse;
};

double drive_scalar(const SystemParams& params, double t);

// Evaluates d(state)/dt. Holds preallocated workspaces, so one evaluator
// serves one integration; construction is O(N^2).
class RhsEvaluator {
public:
    RhsEvaluator(const SystemParams& params, Method method);

    void operator()(double t, const moments::MomentState& state, moments::MomentState& deriv);

    const SystemParams& params() const { return params_; }
    Method method() const { return method_; }

private:
    SystemParams params_;
    Method method_;
    Eigen::VectorXd omega_, g_;
    Eigen::ArrayXXd wdiff_, wsum_;

    // scratch, sized on construction
    Eigen::VectorXcd Sx_, Sy_, Sz_, dSx_, dSy_, dSz_, dalpha_, Wy_, Wz_;
    Eigen::VectorXcd vAg_, vBg_, vDg_[3], vFg_[3];
    Eigen::MatrixXcd Ae_, Be_, dAe_, dBe_;
    Eigen::MatrixXcd M_[3], F_[3], dM_[3], dF_[3], Ty_, Tz_, Uy_, Uz_;
    Eigen::MatrixXcd P1_, P3_, P4_;
    Eigen::MatrixXcd slice_a_, slice_b_; // rank-3 slice scratch
};

// Expectation-space ("raw") right-hand side at second order: the linear
// equations for <a_n^dag sigma^i>, <a_n^dag a_m>, <a_n^dag a_m^dag> together
// with the single-operator equations, closed per `closure`
// (ZeroExpectation: three-operator expectation values = 0;
//  ZeroCumulant: three-operator cumulants = 0). Used by the property tests;
// the production path converts cumulants to this space on the fly.
struct RawState2 {
    double sx{0.0}, sy{0.0}, sz{0.0};
    Eigen::VectorXcd alpha, Sx, Sy, Sz;
    Eigen::MatrixXcd Ae, Be;

    static RawState2 zero(int n);
};

RawState2 rhs_raw2(const RawState2& s, const SystemParams& params, Closure closure, double t);

// Conversions between the canonical cumulant state and the raw state.
RawState2 to_raw(const moments::MomentState& s);
void raw_to_cumulant_derivative(const moments::MomentState& s, const RawState2& draw,
                                moments::MomentState& deriv);

} // namespace cqed::eom
