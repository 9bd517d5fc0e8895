#include "cqed/drive.hpp"

#include <cmath>

#include "cqed/errors.hpp"

namespace cqed::drive {

static DrivePulse make(PulseKind kind, double muE0, double t0, double T, double omega_L) {
    if (!(T > 0.0)) throw ConfigError("drive: pulse width T must be > 0");
    if (muE0 < 0.0) throw ConfigError("drive: muE0 must be >= 0");
    DrivePulse p;
    p.kind = kind;
    p.muE0 = muE0;
    p.t0 = t0;
    p.T = T;
    p.omega_L = omega_L;
    return p;
}

DrivePulse DrivePulse::gaussian(double muE0, double t0, double T, double omega_L) {
    return make(PulseKind::Gaussian, muE0, t0, T, omega_L);
}

DrivePulse DrivePulse::turn_on(double muE0, double t0, double T, double omega_L) {
    return make(PulseKind::TurnOn, muE0, t0, T, omega_L);
}

double mu_field(const DrivePulse& p, double t) {
    switch (p.kind) {
    case PulseKind::None:
        return 0.0;
    case PulseKind::Gaussian: {
        const double x = (t - p.t0) / p.T;
        return p.muE0 * std::exp(-0.5 * x * x) * std::sin(p.omega_L * t);
    }
    case PulseKind::TurnOn: {
        double env = 1.0;
        if (t < p.t0) {
            const double x = (t - p.t0) / p.T;
            env = std::exp(-0.5 * x * x);
        }
        return p.muE0 * env * std::sin(p.omega_L * t);
    }
    }
    return 0.0;
}

std::vector<std::complex<double>> displaced_amplitudes(const spectral::DiscreteModes& modes,
                                                       const std::vector<std::complex<double>>& alpha0,
                                                       double t) {
    if (static_cast<int>(alpha0.size()) != modes.size())
        throw ShapeMismatch("displaced_amplitudes: alpha0 length != number of modes");
    std::vector<std::complex<double>> out(alpha0.size());
    for (std::size_t n = 0; n < alpha0.size(); ++n) {
        const double ph = -modes.omega[n] * t;
        out[n] = alpha0[n] * std::complex<double>(std::cos(ph), std::sin(ph));
    }
    return out;
}

} // namespace cqed::drive
