#include <doctest.h>

#include <cmath>
#include <complex>

#include "cqed/drive.hpp"
#include "cqed/errors.hpp"
#include "cqed/units.hpp"

using namespace cqed;
using drive::DrivePulse;
using drive::mu_field;

TEST_CASE("mu_field pulse shapes") {
    CHECK(mu_field(DrivePulse::none(), 12.3) == 0.0);

    // reference pulse parameters: t0 = 77.76 fs, T = 24.20 fs, muE0 = 0.132 eV
    const double t0 = units::time_to_natural(77.76);
    const double T = units::time_to_natural(24.20);
    CHECK(t0 == doctest::Approx(118.14).epsilon(1e-3));
    CHECK(T == doctest::Approx(36.77).epsilon(1e-3));
    auto gauss = DrivePulse::gaussian(0.132, t0, T, 2.72);
    CHECK(mu_field(gauss, t0) == doctest::Approx(0.132 * std::sin(2.72 * t0)).epsilon(1e-14));

    auto turn = DrivePulse::turn_on(0.263, t0, T, 2.72);
    SUBCASE("turn-on envelope is exactly 1 after t0") {
        for (int k = 1; k <= 3; ++k) {
            const double t = t0 + k * 2.0 * M_PI / 2.72;
            CHECK(mu_field(turn, t) == 0.263 * std::sin(2.72 * t));
        }
    }
    SUBCASE("turn-on is continuous at t0 and bounded by muE0") {
        const double eps = 1e-9;
        CHECK(std::abs(mu_field(turn, t0 - eps) - mu_field(turn, t0 + eps)) < 1e-8);
        for (int i = 0; i <= 2000; ++i) {
            const double t = i * 0.25;
            CHECK(std::abs(mu_field(turn, t)) <= 0.263 + 1e-15);
        }
    }
    SUBCASE("gaussian tail vanishes") {
        const double t = t0 + 10.0 * T;
        CHECK(std::abs(mu_field(gauss, t)) < 1e-20 * 0.132);
    }
    CHECK_THROWS_AS(DrivePulse::gaussian(0.1, 0.0, 0.0, 1.0), ConfigError);
    CHECK_THROWS_AS(DrivePulse::gaussian(-0.1, 0.0, 1.0, 1.0), ConfigError);
}

TEST_CASE("displaced amplitudes evolve by free phases") {
    spectral::DiscreteModes m;
    m.omega = {1.0, 2.5};
    m.g = {0.1, 0.1};
    m.delta_omega = 1.5;
    using cxd = std::complex<double>;
    std::vector<cxd> zeros{0.0, 0.0};
    auto z = drive::displaced_amplitudes(m, zeros, 7.7);
    CHECK(std::abs(z[0]) == 0.0);
    CHECK(std::abs(z[1]) == 0.0);

    std::vector<cxd> a0{cxd(0.3, -0.4), cxd(0.0, 0.0)};
    auto at0 = drive::displaced_amplitudes(m, a0, 0.0);
    CHECK(at0[0] == a0[0]);
    for (double t : {0.3, 2.9, 17.0}) {
        auto at = drive::displaced_amplitudes(m, a0, t);
        CHECK(std::abs(at[0]) == doctest::Approx(std::abs(a0[0])).epsilon(1e-14));
        CHECK(std::arg(at[0] / a0[0]) == doctest::Approx(std::remainder(-1.0 * t, 2 * M_PI))
                                             .epsilon(1e-12));
    }
    std::vector<cxd> wrong{cxd(1.0, 0.0)};
    CHECK_THROWS_AS(drive::displaced_amplitudes(m, wrong, 0.0), ShapeMismatch);
}
