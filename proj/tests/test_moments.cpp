#include <doctest.h>

#include <algorithm>
#include <complex>
#include <random>
#include <vector>

#include "cqed/errors.hpp"
#include "cqed/moments.hpp"

using namespace cqed;
using moments::AxisX;
using moments::AxisY;
using moments::AxisZ;
using moments::MomentState;
using moments::Op;
using moments::Order;
using cxd = std::complex<double>;

namespace {

spectral::DiscreteModes test_modes(int n) {
    spectral::DiscreteModes m;
    m.delta_omega = 0.5;
    m.omega_min = 0.5;
    m.omega_max = 0.5 + 0.5 * n;
    for (int i = 0; i < n; ++i) {
        m.omega.push_back(0.75 + 0.5 * i);
        m.g.push_back(0.05 + 0.01 * i);
    }
    return m;
}

// Random state with all stored-block symmetries satisfied.
MomentState random_state(Order order, int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-0.4, 0.4);
    auto c = [&] { return cxd(u(rng), u(rng)); };
    MomentState s(order, n);
    s.sx() = u(rng);
    s.sy() = u(rng);
    s.sz() = u(rng);
    for (int i = 0; i < n; ++i) s.a()[i] = c();
    if (moments::has_pairs(order)) {
        for (int ax = 0; ax < 3; ++ax)
            for (int i = 0; i < n; ++i) s.ads(ax)[i] = c();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j) {
                const cxd v = (i == j) ? cxd(u(rng), 0.0) : c();
                const cxd w = c();
                s.ada()(i, j) = v;
                s.ada()(j, i) = std::conj(v);
                s.add()(i, j) = w;
                s.add()(j, i) = w;
            }
    }
    auto fill_hermitian = [&](moments::MatView m) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j) {
                const cxd v = (i == j) ? cxd(u(rng), 0.0) : c();
                m(i, j) = v;
                m(j, i) = std::conj(v);
            }
    };
    if (moments::has_adas_z(order)) fill_hermitian(s.adas(AxisZ));
    if (moments::has_third(order)) {
        fill_hermitian(s.adas(AxisX));
        fill_hermitian(s.adas(AxisY));
        for (int ax = 0; ax < 3; ++ax)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j <= i; ++j) {
                    const cxd v = c();
                    s.adds(ax)(i, j) = v;
                    s.adds(ax)(j, i) = v;
                }
        auto G = s.adda();
        auto K = s.addd();
        for (int l = 0; l < n; ++l)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j <= i; ++j) {
                    const cxd v = c();
                    G(i, j, l) = v;
                    G(j, i, l) = v;
                }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j)
                for (int l = 0; l <= j; ++l) {
                    const cxd v = c();
                    K(i, j, l) = v;
                    K(i, l, j) = v;
                    K(j, i, l) = v;
                    K(j, l, i) = v;
                    K(l, i, j) = v;
                    K(l, j, i) = v;
                }
    }
    return s;
}

// Independent cumulant extraction: cum(S) = exp(S) - sum over proper
// partitions of products of lower cumulants.
cxd extract_cumulant(const MomentState& s, const std::vector<Op>& ops) {
    const int k = static_cast<int>(ops.size());
    cxd exp_val = moments::expand_cumulants(s, ops);
    if (k == 1) return exp_val;
    cxd correction = 0.0;
    for (const auto& part : moments::partitions(k)) {
        if (part.size() == 1) continue; // the cumulant itself
        cxd prod = 1.0;
        for (const auto& idx : part) {
            std::vector<Op> sub;
            for (int i : idx) sub.push_back(ops[i]);
            prod *= extract_cumulant(s, sub);
        }
        correction += prod;
    }
    return exp_val - correction;
}

} // namespace

TEST_CASE("init and basic observables") {
    auto modes = test_modes(4);
    for (auto order : {Order::MF, Order::Two, Order::TwoPlusOneB, Order::Three}) {
        auto g = moments::init(moments::InitKind::GroundVacuum, modes, order);
        CHECK(moments::population(g) == 0.0);
        CHECK(moments::photon_total(g) == 0.0);
        auto e = moments::init(moments::InitKind::ExcitedVacuum, modes, order);
        CHECK(moments::population(e) == 1.0);
        CHECK(moments::photon_total(e) == 0.0);
        // all cumulant blocks exactly zero: only sz may be nonzero
        int nonzero = 0;
        for (Eigen::Index i = 0; i < e.flat().size(); ++i)
            if (e.flat()[i] != 0.0) ++nonzero;
        CHECK(nonzero == 1);
    }
}

TEST_CASE("population handles nonphysical values") {
    auto s = moments::init(moments::InitKind::GroundVacuum, test_modes(2), Order::Two);
    s.sz() = 1.0;
    CHECK(moments::population(s) == 1.0);
    s.sz() = -1.0;
    CHECK(moments::population(s) == 0.0);
    s.sz() = -1.1;
    CHECK(moments::population(s) == doctest::Approx(-0.05));
}

TEST_CASE("photon_total sums coherent and fluctuation parts") {
    auto s = moments::init(moments::InitKind::GroundVacuum, test_modes(2), Order::Two);
    s.ada()(0, 0) = 0.3;
    s.ada()(1, 1) = 0.7;
    CHECK(moments::photon_total(s) == doctest::Approx(1.0));
    s.a()[0] = cxd(0.6, 0.8);
    CHECK(moments::photon_total(s) == doctest::Approx(2.0));
    auto pm = moments::photon_per_mode(s);
    CHECK(pm[0] == doctest::Approx(1.3));
    CHECK(pm[1] == doctest::Approx(0.7));
}

TEST_CASE("displaced field") {
    auto s = moments::init(moments::InitKind::GroundVacuum, test_modes(2), Order::Two);
    s.a()[0] = cxd(0.5, 0.0);
    std::vector<cxd> alphas{cxd(0.0, 0.0), cxd(0.25, -1.0)};
    auto f = moments::displaced_field(s, alphas);
    CHECK(f[0] == cxd(0.5, 0.0));
    CHECK(f[1] == cxd(0.25, -1.0));
    std::vector<cxd> bad{cxd(0.0, 0.0)};
    CHECK_THROWS_AS(moments::displaced_field(s, bad), ShapeMismatch);
}

TEST_CASE("flat layout matches the documented serialization order") {
    const int n = 3;
    MomentState s(Order::Three, n);
    CHECK(s.flat().size() ==
          static_cast<Eigen::Index>(MomentState::flat_size(Order::Three, n)));
    CHECK(MomentState::flat_size(Order::Three, n) ==
          static_cast<std::size_t>(3 + 2 * (4 * n + 8 * n * n + 2 * n * n * n)));
    s.sx() = 1.0;
    s.sy() = 2.0;
    s.sz() = 3.0;
    CHECK(s.flat()[0] == 1.0);
    CHECK(s.flat()[2] == 3.0);
    s.a()[0] = cxd(4.0, 5.0);
    CHECK(s.flat()[3] == 4.0);
    CHECK(s.flat()[4] == 5.0);
    s.ads(AxisX)[0] = cxd(6.0, 7.0);
    CHECK(s.flat()[3 + 2 * n] == 6.0);
    s.ads(AxisZ)[n - 1] = cxd(8.0, 9.0);
    CHECK(s.flat()[3 + 2 * n + 2 * 3 * n - 1] == 9.0);
    s.ada()(1, 0) = cxd(10.0, 0.0); // column-major: element (1,0) right after (0,0)
    CHECK(s.flat()[3 + 8 * n + 2] == 10.0);
    s.addd()(0, 0, 0) = cxd(11.0, 0.0);
    CHECK(s.flat()[3 + 2 * (4 * n + 8 * n * n + n * n * n)] == 11.0);
    // storage tiers
    CHECK(MomentState::flat_size(Order::MF, n) == static_cast<std::size_t>(3 + 2 * (4 * n)));
    CHECK(MomentState::flat_size(Order::Two, n) ==
          static_cast<std::size_t>(3 + 2 * (4 * n + 2 * n * n)));
    CHECK(MomentState::flat_size(Order::TwoPlusOneA, n) ==
          static_cast<std::size_t>(3 + 2 * (4 * n + 3 * n * n)));
}

TEST_CASE("set partitions up to order 4") {
    CHECK(moments::partitions(1).size() == 1);
    CHECK(moments::partitions(2).size() == 2);
    CHECK(moments::partitions(3).size() == 5);
    CHECK(moments::partitions(4).size() == 15);
}

TEST_CASE("expand_cumulants: pinned reductions") {
    const int n = 3;
    MomentState s(Order::TwoPlusOneA, n);
    // all singles zero, pair cumulant c -> <ab> = c
    s.ada()(0, 1) = cxd(0.2, 0.1);
    s.ada()(1, 0) = std::conj(cxd(0.2, 0.1));
    std::vector<Op> ab{Op::adag(0), Op::a(1)};
    CHECK(moments::expand_cumulants(s, ab) == cxd(0.2, 0.1));

    // <a_n^dag a_m sigma_z> with <a_n> = 0: sz*<a^dag a>_c + <a^dag a sigma_z>_c
    s.sz() = -0.8;
    s.adas(AxisZ)(0, 1) = cxd(0.05, -0.02);
    s.adas(AxisZ)(1, 0) = std::conj(cxd(0.05, -0.02));
    std::vector<Op> abz{Op::adag(0), Op::a(1), Op::sigma(AxisZ)};
    CHECK(moments::expand_cumulants(s, abz) == -0.8 * cxd(0.2, 0.1) + cxd(0.05, -0.02));

    std::vector<Op> two_sigmas{Op::sigma(AxisX), Op::sigma(AxisY)};
    CHECK_THROWS_AS(moments::expand_cumulants(s, two_sigmas), ConfigError);
}

TEST_CASE("cumulant extraction round trip on random consistent states") {
    const int n = 3;
    for (auto order : {Order::Two, Order::TwoPlusOneA, Order::Three}) {
        auto s = random_state(order, n, 1234);
        std::vector<std::vector<Op>> patterns = {
            {Op::adag(0), Op::sigma(AxisY)},
            {Op::a(2), Op::sigma(AxisZ)},
            {Op::adag(0), Op::a(1)},
            {Op::adag(1), Op::adag(2)},
            {Op::a(0), Op::a(0)},
            {Op::adag(0), Op::a(2), Op::sigma(AxisZ)},
            {Op::adag(1), Op::adag(2), Op::sigma(AxisX)},
            {Op::adag(0), Op::adag(1), Op::a(2)},
            {Op::adag(2), Op::adag(2), Op::adag(0)},
            {Op::adag(0), Op::a(1), Op::a(2)},
            {Op::a(0), Op::a(1), Op::sigma(AxisY)},
        };
        for (const auto& p : patterns) {
            const cxd stored = moments::cumulant_lookup(s, p);
            const cxd extracted = extract_cumulant(s, p);
            CHECK(std::abs(stored - extracted) < 1e-12);
        }
    }
}

TEST_CASE("symmetry residual flags violations") {
    auto s = random_state(Order::Three, 3, 77);
    CHECK(moments::symmetry_residual(s) < 1e-14);
    s.ada()(0, 1) += cxd(1e-6, 0.0);
    CHECK(moments::symmetry_residual(s) > 1e-7);
}
