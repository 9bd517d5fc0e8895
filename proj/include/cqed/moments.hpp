// moments.hpp — Truncated moment hierarchy: the integrator's state vector.
//
// The state stores single-operator expectation values and cumulants (not raw
// expectation values) for all orders >= 2. Storage is one flat real vector so
// the integrator can treat the state as a plain ODE unknown; typed views are
// mapped on top.
//
// Flat layout (doubles), for N modes, complex entries as (re, im) pairs:
//   pauli  : 3                       <sx>, <sy>, <sz>
//   a      : 2N                      <a_n>
//   ads    : 3 * 2N                  <a_n^dag sigma^i>_c, i = x, y, z
//   ada    : 2N^2                    <a_n^dag a_m>_c        (Hermitian)
//   add    : 2N^2                    <a_n^dag a_m^dag>_c    (symmetric)
//   adas_z : 2N^2                    <a_n^dag a_m sigma^z>_c (2+1a/2+1b/3 only)
//   adas_x, adas_y : 2N^2 each       (order 3 only)
//   adds_x/y/z     : 2N^2 each       <a_n^dag a_m^dag sigma^i>_c (order 3 only)
//   adda   : 2N^3                    <a_n^dag a_m^dag a_l>_c (order 3 only)
//   addd   : 2N^3                    <a_n^dag a_m^dag a_l^dag>_c (order 3 only)
// Matrices are column-major: element (n, m) at n + N*m. Rank-3 blocks index
// (n, m, l) at n + N*m + N^2*l.
#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cqed/spectral.hpp"

namespace cqed::moments {

using cxd = std::complex<double>;

enum class Order { MF, Two, TwoPlusOneA, TwoPlusOneB, Three };

constexpr bool has_pairs(Order o) { return o != Order::MF; }
constexpr bool has_adas_z(Order o) {
    return o == Order::TwoPlusOneA || o == Order::TwoPlusOneB || o == Order::Three;
}
constexpr bool has_third(Order o) { return o == Order::Three; }

const char* order_name(Order o);

// Axis indices for sigma^x, sigma^y, sigma^z blocks.
inline constexpr int AxisX = 0;
inline constexpr int AxisY = 1;
inline constexpr int AxisZ = 2;

using VecView = Eigen::Map<Eigen::VectorXcd>;
using ConstVecView = Eigen::Map<const Eigen::VectorXcd>;
using MatView = Eigen::Map<Eigen::MatrixXcd>;
using ConstMatView = Eigen::Map<const Eigen::MatrixXcd>;

// Lightweight view of an N x N x N complex block.
template <typename Scalar>
struct Tensor3View {
    Scalar* data{nullptr};
    int n{0};
    Scalar& operator()(int i, int j, int k) const {
        return data[i + static_cast<std::ptrdiff_t>(n) * j +
                    static_cast<std::ptrdiff_t>(n) * n * k];
    }
    // (n, m) matrix at fixed last index.
    auto slice(int k) const {
        using Mat = std::conditional_t<std::is_const_v<Scalar>,
                                       Eigen::Map<const Eigen::MatrixXcd>, Eigen::Map<Eigen::MatrixXcd>>;
        return Mat(data + static_cast<std::ptrdiff_t>(n) * n * k, n, n);
    }
    std::ptrdiff_t size() const { return static_cast<std::ptrdiff_t>(n) * n * n; }
};

class MomentState {
public:
    MomentState() = default;
    MomentState(Order order, int n_modes);

    Order order() const { return order_; }
    int n_modes() const { return n_; }

    static std::size_t flat_size(Order order, int n_modes);

    Eigen::VectorXd& flat() { return buf_; }
    const Eigen::VectorXd& flat() const { return buf_; }

    double& pauli(int axis) { return buf_[axis]; }
    double pauli(int axis) const { return buf_[axis]; }
    double& sx() { return buf_[0]; }
    double& sy() { return buf_[1]; }
    double& sz() { return buf_[2]; }
    double sx() const { return buf_[0]; }
    double sy() const { return buf_[1]; }
    double sz() const { return buf_[2]; }

    VecView a() { return vec(off_a_); }
    ConstVecView a() const { return cvec(off_a_); }
    VecView ads(int axis) { return vec(off_ads_ + axis * 2 * n_); }
    ConstVecView ads(int axis) const { return cvec(off_ads_ + axis * 2 * n_); }
    MatView ada() { return mat(off_ada_); }
    ConstMatView ada() const { return cmat(off_ada_); }
    MatView add() { return mat(off_add_); }
    ConstMatView add() const { return cmat(off_add_); }
    // adas(AxisZ) is available from 2+1a upward, adas(AxisX/AxisY) only at order 3.
    MatView adas(int axis) { return mat(adas_off(axis)); }
    ConstMatView adas(int axis) const { return cmat(adas_off(axis)); }
    MatView adds(int axis) { return mat(off_adds_ + axis * 2 * n_ * n_); }
    ConstMatView adds(int axis) const { return cmat(off_adds_ + axis * 2 * n_ * n_); }
    Tensor3View<cxd> adda() { return t3(off_adda_); }
    Tensor3View<const cxd> adda() const { return ct3(off_adda_); }
    Tensor3View<cxd> addd() { return t3(off_addd_); }
    Tensor3View<const cxd> addd() const { return ct3(off_addd_); }

    void set_zero() { buf_.setZero(); }

private:
    std::ptrdiff_t adas_off(int axis) const {
        // stored order: adas_z, then (order 3) adas_x, adas_y
        if (axis == AxisZ) return off_adas_z_;
        return off_adas_xy_ + axis * 2 * n_ * n_;
    }
    VecView vec(std::ptrdiff_t off) { return VecView(ptr(off), n_); }
    ConstVecView cvec(std::ptrdiff_t off) const { return ConstVecView(cptr(off), n_); }
    MatView mat(std::ptrdiff_t off) { return MatView(ptr(off), n_, n_); }
    ConstMatView cmat(std::ptrdiff_t off) const { return ConstMatView(cptr(off), n_, n_); }
    Tensor3View<cxd> t3(std::ptrdiff_t off) { return {ptr(off), n_}; }
    Tensor3View<const cxd> ct3(std::ptrdiff_t off) const { return {cptr(off), n_}; }
    cxd* ptr(std::ptrdiff_t off) { return reinterpret_cast<cxd*>(buf_.data() + off); }
    const cxd* cptr(std::ptrdiff_t off) const {
        return reinterpret_cast<const cxd*>(buf_.data() + off);
    }

    Order order_{Order::MF};
    int n_{0};
    std::ptrdiff_t off_a_{0}, off_ads_{0}, off_ada_{0}, off_add_{0}, off_adas_z_{0},
        off_adas_xy_{0}, off_adds_{0}, off_adda_{0}, off_addd_{0};
    Eigen::VectorXd buf_;
};

enum class InitKind { GroundVacuum, ExcitedVacuum };

MomentState init(InitKind kind, const spectral::DiscreteModes& modes, Order order);

double population(const MomentState& s);
double photon_total(const MomentState& s);
std::vector<double> photon_per_mode(const MomentState& s);

struct Observables {
    double population{0.0};
    double sx{0.0}, sy{0.0}, sz{0.0};
    double photon_total{0.0};
    std::vector<double> per_mode; // photon number per mode, filled on request
};

Observables observables(const MomentState& s, bool per_mode = false);

// <a_n> shifted back by the displaced classical amplitudes alpha_n(t).
std::vector<cxd> displaced_field(const MomentState& s, std::span<const cxd> pulse_alphas);

// Max violation of the stored blocks' Hermiticity/symmetry constraints.
double symmetry_residual(const MomentState& s);

// --- generic cumulant machinery ------------------------------------------

enum class OpKind : std::uint8_t { ADag, A, Sigma };

struct Op {
    OpKind kind;
    int index; // mode for ADag/A, axis (0..2) for Sigma
    static Op adag(int n) { return {OpKind::ADag, n}; }
    static Op a(int n) { return {OpKind::A, n}; }
    static Op sigma(int axis) { return {OpKind::Sigma, axis}; }
};

// Cumulant of a normal-ordered operator string (daggers first, then
// annihilation operators, at most one trailing sigma), read from the state.
// Blocks above the stored order evaluate to zero.
cxd cumulant_lookup(const MomentState& s, std::span<const Op> ops);

// Reconstruct the expectation value of the (normal-ordered) string from
// stored singles and cumulants; cumulants of order 4 are treated as zero.
cxd expand_cumulants(const MomentState& s, std::span<const Op> ops);

// Set partitions of {0, .., k-1}, k <= 4; each partition is a list of blocks,
// each block a sorted index list. Bell numbers: 1, 1, 2, 5, 15.
const std::vector<std::vector<std::vector<int>>>& partitions(int k);

} // namespace cqed::moments
