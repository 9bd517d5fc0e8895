#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "cqed/errors.hpp"
#include "cqed/spectral.hpp"
#include "cqed/units.hpp"

using namespace cqed;
using spectral::SpectralDensity;

TEST_CASE("lorentzian eval") {
    auto sd = SpectralDensity::lorentzian(0.008, 0.027, 2.72);
    const double peak = 2.0 * 0.008 * 0.008 / (M_PI * 0.027);
    CHECK(sd.eval(2.72) == doctest::Approx(peak).epsilon(1e-12));
    CHECK(sd.eval(2.72) == doctest::Approx(1.509e-3).epsilon(1e-3));
    CHECK(sd.eval(2.72 + 0.0135) == doctest::Approx(0.5 * peak).epsilon(1e-12));
    CHECK(sd.eval(2.72 - 0.0135) == doctest::Approx(0.5 * peak).epsilon(1e-12));
}

TEST_CASE("free-space eval pins the lifetime anchor") {
    auto sd = SpectralDensity::free_space(2565.0);
    // 2*pi*J(2.72) = hbar / 46 fs
    const double J_anchor = units::Constants::hbar_evfs / 46.0 / (2.0 * M_PI);
    CHECK(sd.eval(2.72) == doctest::Approx(J_anchor).epsilon(0.01));
    CHECK(sd.eval(2.72) == doctest::Approx(2.277e-3).epsilon(0.01));
    CHECK(sd.eval(0.0) == 0.0);
}

TEST_CASE("tabulated: interpolation and range errors") {
    auto sd = SpectralDensity::tabulated({1.0, 2.0, 4.0}, {0.0, 2.0, 2.0});
    CHECK(sd.eval(1.5) == doctest::Approx(1.0));
    CHECK(sd.eval(3.0) == doctest::Approx(2.0));
    CHECK(sd.eval(1.0) == doctest::Approx(0.0));
    CHECK(sd.eval(4.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(sd.eval(0.5), OutOfRange);
    CHECK_THROWS_AS(sd.eval(4.5), OutOfRange);
    CHECK_THROWS_AS(SpectralDensity::tabulated({1.0, 1.0}, {0.0, 0.0}), ConfigError);
    CHECK_THROWS_AS(SpectralDensity::tabulated({1.0, 2.0}, {0.0, -0.1}), ConfigError);
    CHECK_THROWS_AS(SpectralDensity::tabulated({1.0}, {0.0}), ConfigError);
}

TEST_CASE("tabulated file parsing") {
    const char* path = "test_spectral_tab.txt";
    {
        std::ofstream f(path);
        f << "# test spectral density\n"
          << "1.0 0.5\n"
          << "\n"
          << "2.0\t1.5  # inline comment\n"
          << "3.0 0.25\n";
    }
    auto sd = SpectralDensity::tabulated_from_file(path);
    CHECK(sd.eval(1.5) == doctest::Approx(1.0));
    CHECK(sd.eval(2.5) == doctest::Approx(0.875));
    std::remove(path);
    CHECK_THROWS_AS(SpectralDensity::tabulated_from_file("no_such_file.txt"), IoError);
}

TEST_CASE("discretize grids") {
    auto fs = SpectralDensity::free_space(2565.0);
    auto m = spectral::discretize(fs, 0.0, 5.44, 400);
    CHECK(m.delta_omega == doctest::Approx(0.0136).epsilon(1e-12));
    CHECK(m.omega[0] == doctest::Approx(0.0068).epsilon(1e-12));
    CHECK(m.size() == 400);

    auto lor = SpectralDensity::lorentzian(0.008, 0.027, 2.72);
    auto mc = spectral::discretize(lor, 2.04, 3.40, 400);
    CHECK(mc.delta_omega == doctest::Approx(0.0034).epsilon(1e-12));

    // constant J: all couplings equal sqrt(c dw)
    auto flat = SpectralDensity::tabulated({0.0, 10.0}, {0.3, 0.3});
    auto mf = spectral::discretize(flat, 1.0, 2.0, 8);
    for (double g : mf.g) CHECK(g == doctest::Approx(std::sqrt(0.3 * 0.125)).epsilon(1e-12));

    // strictly increasing frequencies
    for (int i = 1; i < mc.size(); ++i) CHECK(mc.omega[i] > mc.omega[i - 1]);

    CHECK_THROWS_AS(spectral::discretize(fs, 2.0, 1.0, 10), ConfigError);
    CHECK_THROWS_AS(spectral::discretize(fs, 0.0, 1.0, 0), ConfigError);
}

TEST_CASE("recurrence time") {
    spectral::DiscreteModes m;
    m.delta_omega = 0.0034;
    CHECK(spectral::recurrence_time(m) == doctest::Approx(1848.0).epsilon(1e-3));
    CHECK(units::time_from_natural(spectral::recurrence_time(m)) ==
          doctest::Approx(1216.0).epsilon(1e-3));
    spectral::DiscreteModes m2;
    m2.delta_omega = 0.0136;
    CHECK(units::time_from_natural(spectral::recurrence_time(m2)) ==
          doctest::Approx(304.0).epsilon(2e-3));
    m2.delta_omega = 2 * 0.0034;
    CHECK(spectral::recurrence_time(m2) == doctest::Approx(0.5 * 1848.0).epsilon(1e-3));
}

TEST_CASE("Riemann-sum convergence of sum g_n^2 to the J integral") {
    auto sum_g2 = [](const SpectralDensity& sd, int n) {
        auto m = spectral::discretize(sd, 2.04, 3.40, n);
        double s = 0.0;
        for (double g : m.g) s += g * g;
        return s;
    };
    auto exact_integral = [](double g, double gamma) {
        const double half = gamma / 2.0;
        return g * g / M_PI *
               (std::atan((3.40 - 2.72) / half) - std::atan((2.04 - 2.72) / half));
    };

    // broad Lorentzian: clean 1/N^2 midpoint-rule regime
    auto broad = SpectralDensity::lorentzian(0.008, 0.3, 2.72);
    const double exact_b = exact_integral(0.008, 0.3);
    const double b100 = std::abs(sum_g2(broad, 100) - exact_b);
    const double b200 = std::abs(sum_g2(broad, 200) - exact_b);
    CHECK(b100 / b200 == doctest::Approx(4.0).epsilon(0.15));

    // cavity Lorentzian: error keeps shrinking toward the analytic integral
    auto lor = SpectralDensity::lorentzian(0.008, 0.027, 2.72);
    const double exact_c = exact_integral(0.008, 0.027);
    const double e100 = std::abs(sum_g2(lor, 100) - exact_c);
    const double e1600 = std::abs(sum_g2(lor, 1600) - exact_c);
    CHECK(e1600 < e100 / 100.0);
    CHECK(sum_g2(lor, 1600) == doctest::Approx(exact_c).epsilon(1e-4));
}
