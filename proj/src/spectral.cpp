#include "cqed/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cqed/errors.hpp"
#include "cqed/units.hpp"

namespace cqed::spectral {

SpectralDensity SpectralDensity::free_space(double mu_debye) {
    if (mu_debye < 0.0) throw ConfigError("free_space: mu_debye must be >= 0");
    return SpectralDensity(FreeSpace{mu_debye});
}

SpectralDensity SpectralDensity::lorentzian(double g, double gamma, double omega_c) {
    if (gamma <= 0.0) throw ConfigError("lorentzian: gamma must be > 0");
    if (g < 0.0) throw ConfigError("lorentzian: g must be >= 0");
    return SpectralDensity(Lorentzian{g, gamma, omega_c});
}

SpectralDensity SpectralDensity::tabulated(std::vector<double> omega, std::vector<double> J) {
    if (omega.size() != J.size()) throw ConfigError("tabulated: omega/J length mismatch");
    if (omega.size() < 2) throw ConfigError("tabulated: need at least 2 points");
    for (std::size_t i = 0; i < omega.size(); ++i) {
        if (i > 0 && !(omega[i] > omega[i - 1]))
            throw ConfigError("tabulated: omega values must be strictly increasing");
        if (!(J[i] >= 0.0)) throw ConfigError("tabulated: J must be >= 0");
    }
    return SpectralDensity(Tabulated{std::move(omega), std::move(J)});
}

SpectralDensity SpectralDensity::tabulated_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open spectral density file: " + path);
    std::vector<double> omega, J;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double w, j;
        if (!(ls >> w)) continue; // blank or comment-only line
        if (!(ls >> j))
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'omega_eV J_eV'");
        omega.push_back(w);
        J.push_back(j);
    }
    try {
        return tabulated(std::move(omega), std::move(J));
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

double SpectralDensity::eval(double omega) const {
    if (omega < 0.0) throw OutOfRange("spectral eval: omega must be >= 0");
    return std::visit(
        [omega](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, FreeSpace>) {
                return units::free_space_J(m.mu_debye, omega);
            } else if constexpr (std::is_same_v<T, Lorentzian>) {
                const double half = m.gamma / 2.0;
                const double d = omega - m.omega_c;
                return m.g * m.g / M_PI * half / (d * d + half * half);
            } else {
                if (omega < m.omega.front() || omega > m.omega.back())
                    throw OutOfRange("tabulated spectral density queried outside table");
                auto it = std::upper_bound(m.omega.begin(), m.omega.end(), omega);
                if (it == m.omega.end()) return m.J.back();
                std::size_t hi = static_cast<std::size_t>(it - m.omega.begin());
                if (hi == 0) return m.J.front();
                std::size_t lo = hi - 1;
                const double t = (omega - m.omega[lo]) / (m.omega[hi] - m.omega[lo]);
                return m.J[lo] + t * (m.J[hi] - m.J[lo]);
            }
        },
        v_);
}

DiscreteModes discretize(const SpectralDensity& sd, double omega_min, double omega_max,
                         int n_modes) {
    if (!(omega_max > omega_min) || omega_min < 0.0)
        throw ConfigError("discretize: require omega_max > omega_min >= 0");
    if (n_modes < 1) throw ConfigError("discretize: n_modes must be >= 1");
    DiscreteModes out;
    out.omega_min = omega_min;
    out.omega_max = omega_max;
    out.delta_omega = (omega_max - omega_min) / n_modes;
    out.omega.resize(n_modes);
    out.g.resize(n_modes);
    for (int n = 0; n < n_modes; ++n) {
        out.omega[n] = omega_min + (n + 0.5) * out.delta_omega;
        out.g[n] = std::sqrt(sd.eval(out.omega[n]) * out.delta_omega);
    }
    return out;
}

double recurrence_time(const DiscreteModes& modes) { return 2.0 * M_PI / modes.delta_omega; }

} // namespace cqed::spectral
