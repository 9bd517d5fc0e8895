// drive.hpp — Classical driving field at the emitter.
//
// The drive enters the equations of motion only through the scalar mu*E(t),
// so pulses are parameterized directly by muE0 in eV.
#pragma once

#include <complex>
#include <vector>

#include "cqed/spectral.hpp"

namespace cqed::drive {

enum class PulseKind { None, Gaussian, TurnOn };

struct DrivePulse {
    PulseKind kind{PulseKind::None};
    double muE0{0.0};    // eV
    double t0{0.0};      // 1/eV
    double T{1.0};       // 1/eV
    double omega_L{0.0}; // eV

    static DrivePulse none() { return {}; }
    static DrivePulse gaussian(double muE0, double t0, double T, double omega_L);
    static DrivePulse turn_on(double muE0, double t0, double T, double omega_L);
};

// mu*E(t) in eV.
//   None     -> 0
//   Gaussian -> muE0 * exp(-(t-t0)^2/2T^2) * sin(omega_L t)
//   TurnOn   -> muE0 * sin(omega_L t) * (exp(-(t-t0)^2/2T^2) for t<t0, else 1)
double mu_field(const DrivePulse& pulse, double t);

// alpha_n(t) = alpha_n(0) * exp(-i omega_n t): free phase evolution of the
// displaced classical amplitudes. Only used to shift field observables.
std::vector<std::complex<double>> displaced_amplitudes(const spectral::DiscreteModes& modes,
                                                       const std::vector<std::complex<double>>& alpha0,
                                                       double t);

} // namespace cqed::drive
