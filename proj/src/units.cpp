#include "cqed/units.hpp"

#include <cmath>

namespace cqed::units {

double dipole_energy(double mu_debye, double field_v_per_angstrom) {
    return mu_debye * Constants::debye_to_e_angstrom * field_v_per_angstrom;
}

double time_to_natural(double t_fs) { return t_fs / Constants::hbar_evfs; }

double time_from_natural(double t_nat) { return t_nat * Constants::hbar_evfs; }

double free_space_J(double mu_debye, double omega_ev) {
    // J(omega) = omega^3 mu^2 / (6 pi^2 eps0 c^3), evaluated in SI and
    // converted back to eV. With this normalization 2*pi*J(Omega0) equals the
    // standard free-space decay rate omega^3 mu^2 / (3 pi eps0 hbar c^3).
    const double omega_rad = omega_ev * Constants::e_si / Constants::hbar_si; // 1/s
    const double mu_cm = mu_debye * Constants::debye_si;                      // C*m
    const double c3 = Constants::c_si * Constants::c_si * Constants::c_si;
    const double pi = M_PI;
    const double J_joule = omega_rad * omega_rad * omega_rad * mu_cm * mu_cm /
                           (6.0 * pi * pi * Constants::epsilon0_si * c3);
    return J_joule / Constants::e_si;
}

double free_space_lifetime(double mu_debye, double omega0_ev) {
    const double gamma_ev = 2.0 * M_PI * free_space_J(mu_debye, omega0_ev);
    return Constants::hbar_evfs / gamma_ev;
}

} // namespace cqed::units
