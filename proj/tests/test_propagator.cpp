#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "gpelab/errors.hpp"
#include "gpelab/ground_state.hpp"
#include "gpelab/nonlinearity.hpp"
#include "gpelab/observables.hpp"
#include "gpelab/potentials.hpp"
#include "gpelab/propagator.hpp"
#include "gpelab/sinusoid_fit.hpp"

using namespace gpelab;

namespace {

Wavefunction gaussianState(std::shared_ptr<const Grid1D> grid, double sigma,
                           double center) {
  Wavefunction psi(grid);
  for (int i = 0; i < grid->size(); ++i) {
    const double z = grid->z()[i] - center;
    psi.values[i] = std::exp(-z * z / (2.0 * sigma * sigma));
  }
  normalize(psi);
  return psi;
}

void kick(Wavefunction& psi, double beta) {
  for (int i = 0; i < psi.grid->size(); ++i) {
    psi.values[i] *= std::polar(1.0, beta * psi.grid->z()[i]);
  }
}

}  // namespace

TEST_SUITE("core") {

TEST_CASE("free gaussian dispersion matches the analytic width") {
  const auto grid = Grid1D::make(512, 51.2);
  const double sigma0 = 1.5;
  Wavefunction psi = gaussianState(grid, sigma0, 0.0);
  ZeroNonlinearity none;
  auto free_space = staticPotential(std::vector<double>(grid->size(), 0.0));

  const double t = 2.0;
  EvolveOptions opt{1e-3, 2000, 0};
  const Wavefunction out = evolveRealTime(psi, free_space, none, opt);

  // |psi|^2 has std sigma/sqrt(2) for a wavefunction of width sigma
  const double sigma_t = std::numbers::sqrt2 * rmsWidth(out);
  const double expected = sigma0 * std::sqrt(1.0 + std::pow(t / (sigma0 * sigma0), 2));
  CHECK(std::abs(sigma_t - expected) / expected < 1e-6);
}

TEST_CASE("displaced coherent state oscillates at the trap frequency") {
  const auto grid = Grid1D::make(512, 25.6);
  const double omega = 0.4557;
  const double a_z = 1.0 / std::sqrt(omega);
  Wavefunction psi = gaussianState(grid, a_z, 2.0);
  ZeroNonlinearity none;
  auto trap = staticPotential(harmonicPotential(*grid, omega));

  std::vector<double> ts, zs;
  const double period = 2.0 * std::numbers::pi / omega;
  EvolveOptions opt{1e-3, static_cast<long>(4.0 * period / 1e-3), 100};
  evolveRealTime(psi, trap, none, opt, [&](long, const Wavefunction& p) {
    ts.push_back(p.time);
    zs.push_back(meanPosition(p));
  });

  const SinusoidFit fit = fitSinusoid(ts, zs);
  REQUIRE(fit.oscillation_found);
  const double nu_expected = omega / (2.0 * std::numbers::pi);
  CHECK(std::abs(fit.frequency - nu_expected) / nu_expected < 1e-4);
  CHECK(fit.amplitude == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("interacting ground state stays put over 1e4 steps") {
  const auto grid = Grid1D::make(256, 12.8);
  const double omega = 1.0, g1 = 5.0;
  CubicNonlinearity nl(g1);
  auto trap = staticPotential(harmonicPotential(*grid, omega));

  // match the imaginary step to the real step so the prepared state is the
  // fixed point of the same split map
  const double dt = 1e-3;
  GroundStateOptions opts;
  opts.tol = 1e-13;
  opts.dt_tau = dt;
  opts.check_every = 400;
  const auto gs = groundStateImaginaryTime(grid, trap, nl, opts);

  const auto n0 = density(gs.psi);
  const double norm0 = norm(gs.psi);
  EvolveOptions opt{dt, 10000, 0};
  const Wavefunction out = evolveRealTime(gs.psi, trap, nl, opt);

  double sup = 0.0;
  const auto n1 = density(out);
  for (std::size_t i = 0; i < n0.size(); ++i) {
    sup = std::max(sup, std::abs(n1[i] - n0[i]));
  }
  CHECK(sup < 1e-8);

  // norm conservation: < 1e-10 relative per 1e3 steps
  CHECK(std::abs(norm(out) - norm0) / norm0 < 1e-9);
}

TEST_CASE("strang splitting is second order in dt") {
  const auto grid = Grid1D::make(256, 12.8);
  const double omega = 1.0, g1 = 5.0;
  CubicNonlinearity nl(g1);
  auto trap = staticPotential(harmonicPotential(*grid, omega));

  GroundStateOptions gs_opts;
  gs_opts.tol = 1e-11;
  Wavefunction psi = groundStateImaginaryTime(grid, trap, nl, gs_opts).psi;
  kick(psi, 0.3);

  const double t_end = 1.0;
  auto run = [&](double dt) {
    EvolveOptions opt{dt, std::lround(t_end / dt), 0};
    return evolveRealTime(psi, trap, nl, opt);
  };
  const Wavefunction ref = run(2.5e-5);  // dt/8 reference
  auto err = [&](const Wavefunction& w) {
    double e2 = 0.0;
    for (std::size_t i = 0; i < w.values.size(); ++i) {
      e2 += std::norm(w.values[i] - ref.values[i]);
    }
    return std::sqrt(e2 * grid->dz());
  };
  const double e1 = err(run(2e-4));
  const double e2 = err(run(1e-4));
  const double ratio = e1 / e2;
  CHECK(ratio > 3.2);
  CHECK(ratio < 4.8);
}

TEST_CASE("energy functional is conserved for static potentials") {
  const auto grid = Grid1D::make(256, 12.8);
  const double omega = 1.0, g1 = 5.0;
  CubicNonlinearity nl(g1);
  const auto v = harmonicPotential(*grid, omega);
  auto trap = staticPotential(v);

  GroundStateOptions gs_opts;
  gs_opts.tol = 1e-11;
  Wavefunction psi = groundStateImaginaryTime(grid, trap, nl, gs_opts).psi;
  kick(psi, 0.3);

  const double e0 = energyFunctional(psi, v, nl, 0.0).total;
  double drift = 0.0;
  EvolveOptions opt{5e-5, 300000, 10000};
  evolveRealTime(psi, trap, nl, opt, [&](long, const Wavefunction& p) {
    const double e = energyFunctional(p, v, nl, p.time).total;
    drift = std::max(drift, std::abs(e - e0) / std::abs(e0));
  });
  CHECK(drift < 1e-8);
}

TEST_CASE("propagator rejects bad input") {
  const auto grid = Grid1D::make(256, 12.8);
  ZeroNonlinearity none;
  auto trap = staticPotential(harmonicPotential(*grid, 1.0));
  Wavefunction psi = gaussianState(grid, 1.0, 0.0);

  SUBCASE("dt guard") {
    // max|V| ~ 20.5, so dt = 1e-2 violates dt*max(|V|+|G|) <= 0.05
    EvolveOptions opt{1e-2, 10, 0};
    CHECK_THROWS_AS(evolveRealTime(psi, trap, none, opt), ValidationError);
  }
  SUBCASE("negative dt") {
    EvolveOptions opt{-1e-3, 10, 0};
    CHECK_THROWS_AS(evolveRealTime(psi, trap, none, opt), ValidationError);
  }
  SUBCASE("non-finite initial state") {
    Wavefunction bad = psi;
    bad.values[10] = {std::numeric_limits<double>::quiet_NaN(), 0.0};
    EvolveOptions opt{1e-3, 10, 0};
    CHECK_THROWS_AS(evolveRealTime(bad, trap, none, opt), ValidationError);
  }
}

}  // TEST_SUITE
