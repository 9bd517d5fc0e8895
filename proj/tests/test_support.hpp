// test_support.hpp — shared helpers for the unit tests
#pragma once

#include <complex>
#include <random>

#include "cqed/moments.hpp"
#include "cqed/spectral.hpp"

namespace cqed::testsup {

inline spectral::DiscreteModes small_modes(int n) {
    spectral::DiscreteModes m;
    m.delta_omega = 0.5;
    m.omega_min = 0.5;
    m.omega_max = 0.5 + 0.5 * n;
    for (int i = 0; i < n; ++i) {
        m.omega.push_back(0.75 + 0.5 * i);
        m.g.push_back(0.05 + 0.013 * i);
    }
    return m;
}

// Random state satisfying all stored-block symmetries.
inline moments::MomentState random_state(moments::Order order, int n, unsigned seed,
                                         double amp = 0.4) {
    using cxd = std::complex<double>;
    using namespace moments;
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-amp, amp);
    auto c = [&] { return cxd(u(rng), u(rng)); };
    MomentState s(order, n);
    s.sx() = u(rng);
    s.sy() = u(rng);
    s.sz() = u(rng);
    for (int i = 0; i < n; ++i) s.a()[i] = c();
    auto fill_hermitian = [&](MatView m) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j) {
                const cxd v = (i == j) ? cxd(u(rng), 0.0) : c();
                m(i, j) = v;
                m(j, i) = std::conj(v);
            }
    };
    auto fill_symmetric = [&](MatView m) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j) {
                const cxd v = c();
                m(i, j) = v;
                m(j, i) = v;
            }
    };
    if (has_pairs(order)) {
        for (int ax = 0; ax < 3; ++ax)
            for (int i = 0; i < n; ++i) s.ads(ax)[i] = c();
        fill_hermitian(s.ada());
        fill_symmetric(s.add());
    }
    if (has_adas_z(order)) fill_hermitian(s.adas(AxisZ));
    if (has_third(order)) {
        fill_hermitian(s.adas(AxisX));
        fill_hermitian(s.adas(AxisY));
        for (int ax = 0; ax < 3; ++ax) fill_symmetric(s.adds(ax));
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

} // namespace cqed::testsup
