#include <doctest.h>

#include <cmath>
#include <vector>

#include "gpelab/ground_state.hpp"
#include "gpelab/nonlinearity.hpp"
#include "gpelab/observables.hpp"
#include "gpelab/potentials.hpp"
#include "gpelab/quantities.hpp"

using namespace gpelab;

namespace {

// independent route to the TF chemical potential: bisect mu until the
// normalization integral int max(mu - V, 0)/g1 dz equals 1 on a fine grid
double tfMuByQuadrature(double g1, double omega) {
  auto deficit = [&](double mu) {
    const double r = std::sqrt(2.0 * mu) / omega;
    const int n = 40000;
    const double h = 2.2 * r / n;
    double s = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double z = -1.1 * r + i * h;
      s += std::max(mu - 0.5 * omega * omega * z * z, 0.0);
    }
    return s * h / g1 - 1.0;
  };
  double lo = 1e-6, hi = 1.0;
  while (deficit(hi) < 0) hi *= 2.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (deficit(mid) < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_SUITE("core") {

TEST_CASE("harmonic trap without interactions gives mu = omega/2") {
  const auto grid = Grid1D::make(512, 25.6);
  const double omega = 1.0;
  ZeroNonlinearity none;
  auto trap = staticPotential(harmonicPotential(*grid, omega));

  GroundStateOptions opts;
  opts.tol = 1e-10;
  const auto gs = groundStateImaginaryTime(grid, trap, none, opts);
  CHECK(std::abs(gs.chemical_potential - 0.5 * omega) / (0.5 * omega) < 1e-6);
  CHECK(gs.residual < opts.tol);
  CHECK(norm(gs.psi) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("deep Thomas-Fermi chemical potential matches the closed form") {
  // the (53 Hz, 890 Hz), N = 1700 cubic coefficient in internal units
  const double omega = 0.4557, g1 = 137.9;
  const auto grid = Grid1D::make(1024, 51.2);
  CubicNonlinearity nl(g1);
  auto trap = staticPotential(harmonicPotential(*grid, omega));

  GroundStateOptions opts;
  opts.tol = 1e-9;
  const auto gs = groundStateImaginaryTime(grid, trap, nl, opts);

  const double mu_closed = tfChemicalPotential(g1, omega);
  const double mu_quad = tfMuByQuadrature(g1, omega);
  CHECK(std::abs(mu_closed - mu_quad) / mu_quad < 1e-6);  // two oracle routes agree
  CHECK(std::abs(gs.chemical_potential - mu_closed) / mu_closed < 0.02);
}

TEST_CASE("double well ground state is parity symmetric") {
  const auto grid = Grid1D::make(1024, 46.0);
  const double omega = 0.5417;  // 63 Hz
  std::vector<double> v = harmonicPotential(*grid, omega);
  const auto lat = latticePotential(*grid, 8.6, 5.7, 0.0);
  for (int i = 0; i < grid->size(); ++i) v[i] += lat[i];
  CubicNonlinearity nl(63.2);
  GroundStateOptions opts;
  opts.tol = 1e-9;
  const auto gs = groundStateImaginaryTime(grid, staticPotential(v), nl, opts);

  const auto n = density(gs.psi);
  double asym = 0.0;
  for (int i = 1; i < grid->size(); ++i) {
    asym = std::max(asym, std::abs(n[i] - n[grid->size() - i]));
  }
  CHECK(asym < 1e-8);

  // two symmetric peaks: density at the well positions well above the barrier center
  const int center = grid->size() / 2;
  const int well = grid->indexOf(2.7);
  CHECK(n[well] > 2.0 * n[center]);
}

TEST_CASE("imaginary-time energy is non-increasing step by step") {
  const auto grid = Grid1D::make(256, 12.8);
  const double omega = 1.0, g1 = 5.0;
  CubicNonlinearity nl(g1);
  const auto v = harmonicPotential(*grid, omega);

  std::vector<double> energies;
  GroundStateOptions opts;
  opts.tol = 1e-7;
  opts.dt_tau = 2e-3;  // fixed step: pure split-map descent
  opts.check_every = 1;
  opts.max_steps = 400;
  opts.observer = [&](long, const Wavefunction& psi) {
    energies.push_back(energyFunctional(psi, v, nl, 0.0).total);
  };
  try {
    groundStateImaginaryTime(grid, staticPotential(v), nl, opts);
  } catch (const NumericalError&) {
    // the step cap may trigger; the recorded energies are what we test
  }
  REQUIRE(energies.size() > 100);
  for (std::size_t i = 1; i < energies.size(); ++i) {
    CHECK(energies[i] <= energies[i - 1] + 1e-12 * std::max(1.0, std::abs(energies[i - 1])));
  }
}

TEST_CASE("converged mu is grid independent once the healing length is resolved") {
  const double omega = 1.0, g1 = 5.0;
  CubicNonlinearity nl(g1);
  GroundStateOptions opts;
  opts.tol = 1e-10;

  auto mu_on = [&](int n_points) {
    const auto grid = Grid1D::make(n_points, 25.6);
    auto trap = staticPotential(harmonicPotential(*grid, omega));
    return groundStateImaginaryTime(grid, trap, nl, opts).chemical_potential;
  };
  const double mu_512 = mu_on(512);
  const double mu_1024 = mu_on(1024);
  CHECK(std::abs(mu_1024 - mu_512) / mu_512 < 1e-6);
}

}  // TEST_SUITE
