#pragma once

namespace gpelab {

// D_c = pi (6 N hbar a_s / (nu_z m))^{1/3}. SI in, metres out.
double criticalDistanceM(double atom_number, double scattering_length_m,
                         double nu_z_hz, double mass_kg);

// Internal units. xi = 1/sqrt(mu), c = sqrt(mu); xi mu = c exactly.
double healingLength(double mu);
double soundSpeed(double mu);

// Thomas-Fermi closed forms for the cubic 1D GPE with unit-normalized psi:
// mu such that int (mu - V)/g1 dz = 1 over the support.
double tfChemicalPotential(double g1, double omega_z);
double tfRadius(double mu, double omega_z);

}  // namespace gpelab
