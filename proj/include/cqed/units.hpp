// units.hpp — Natural-unit conventions and the few conversions the CLI needs.
//
// Everything inside the library runs with hbar = 1, energies in eV and times
// in 1/eV. Only the boundaries (CLI, file output) speak fs, Debye and V/Angstrom.
#pragma once

namespace cqed::units {

struct Constants {
    // hbar in eV*fs; dividing a time in fs by this gives the natural time in 1/eV.
    static constexpr double hbar_evfs = 0.6582119569;
    // 1 Debye expressed in e*Angstrom, so that mu[D] * E[V/A] * this = energy [eV].
    static constexpr double debye_to_e_angstrom = 0.2081943;

    // SI values, used only inside the free-space spectral-density normalization.
    static constexpr double epsilon0_si = 8.8541878128e-12; // F/m
    static constexpr double c_si = 2.99792458e8;            // m/s
    static constexpr double e_si = 1.602176634e-19;         // C
    static constexpr double hbar_si = 1.054571817e-34;      // J*s
    static constexpr double debye_si = 3.33564095e-30;      // C*m
};

// mu [Debye] times field [V/Angstrom] as an energy in eV.
double dipole_energy(double mu_debye, double field_v_per_angstrom);

// fs -> 1/eV and back.
double time_to_natural(double t_fs);
double time_from_natural(double t_nat);

// Free-space spontaneous-emission spectral density at omega, in eV, for a
// dipole mu in Debye. Normalized so that the Markovian decay rate is
// Gamma = 2*pi*J(omega0).
double free_space_J(double mu_debye, double omega_ev);

// Free-space lifetime in fs: hbar / (2*pi*J(omega0)).
double free_space_lifetime(double mu_debye, double omega0_ev);

} // namespace cqed::units
