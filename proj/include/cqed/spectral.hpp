// spectral.hpp — Spectral-density models and their grid discretization.
#pragma once

#include <string>
#include <variant>
#include <vector>

namespace cqed::spectral {

struct FreeSpace {
    double mu_debye{0.0};
};

struct Lorentzian {
    double g{0.0};       // coupling amplitude, eV
    double gamma{0.0};   // full width, eV
    double omega_c{0.0}; // resonance, eV
};

struct Tabulated {
    // strictly increasing omega [eV], J >= 0 [eV]; at least 2 points
    std::vector<double> omega;
    std::vector<double> J;
};

class SpectralDensity {
public:
    using Variant = std::variant<FreeSpace, Lorentzian, Tabulated>;

    static SpectralDensity free_space(double mu_debye);
    static SpectralDensity lorentzian(double g, double gamma, double omega_c);
    static SpectralDensity tabulated(std::vector<double> omega, std::vector<double> J);
    // One "omega_eV  J_eV" pair per line, '#' comments allowed.
    static SpectralDensity tabulated_from_file(const std::string& path);

    // J(omega) in eV; OutOfRange for tabulated queries beyond the table.
    double eval(double omega) const;

    const Variant& variant() const { return v_; }

private:
    explicit SpectralDensity(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

struct DiscreteModes {
    std::vector<double> omega; // omega_n = omega_min + (n + 1/2) dw
    std::vector<double> g;     // g_n = sqrt(J(omega_n) dw)
    double delta_omega{0.0};
    double omega_min{0.0};
    double omega_max{0.0};

    int size() const { return static_cast<int>(omega.size()); }
};

DiscreteModes discretize(const SpectralDensity& sd, double omega_min, double omega_max,
                         int n_modes);

// 2*pi / delta_omega: horizon beyond which the discretized continuum feeds
// emitted radiation back to the emitter.
double recurrence_time(const DiscreteModes& modes);

} // namespace cqed::spectral
