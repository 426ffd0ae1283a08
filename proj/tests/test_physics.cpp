#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "gpelab/detect.hpp"
#include "gpelab/errors.hpp"
#include "gpelab/ground_state.hpp"
#include "gpelab/nonlinearity.hpp"
#include "gpelab/potentials.hpp"
#include "gpelab/propagator.hpp"
#include "gpelab/quantities.hpp"
#include "gpelab/soliton.hpp"
#include "gpelab/units.hpp"

using namespace gpelab;

namespace {

double goldenMin(double lo, double hi, const std::function<double(double)>& f) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < 200; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

TEST_SUITE("physics") {

TEST_CASE("harmonic potential values") {
  const auto grid = Grid1D::make(512, 25.6);
  const double omega = 1.0;
  const auto v = harmonicPotential(*grid, omega);
  CHECK(v[grid->indexOf(0.0)] == doctest::Approx(0.0));
  for (int i = 1; i < grid->size(); ++i) {
    CHECK(v[i] == doctest::Approx(v[grid->size() - i]).epsilon(1e-14));
  }
  // at the oscillator length a_z = 1/sqrt(omega): V = omega/2
  const double a_z = 1.0 / std::sqrt(omega);
  CHECK(v[grid->indexOf(a_z)] == doctest::Approx(0.5 * omega).epsilon(1e-12));
}

TEST_CASE("lattice potential and the paper's double well") {
  const auto grid = Grid1D::make(1024, 46.0);

  SUBCASE("node at half spacing, zero depth recovers the trap") {
    const auto lat = latticePotential(*grid, 2.0, 5.7, 0.0);
    const int node = grid->indexOf(5.7 / 2.0);
    CHECK(std::abs(lat[node]) < 1e-6);
    const auto flat = latticePotential(*grid, 0.0, 5.7, 0.0);
    for (double x : flat) CHECK(x == 0.0);
  }

  SUBCASE("well separation for 63 Hz trap + h*1 kHz barrier is 5.4 um") {
    UnitSystem u;
    const double omega = u.omegaFromHz(63.0);
    const double depth = u.energyFromHHz(1000.0);
    // 1D minimization of the analytic combined potential
    auto v_total = [&](double z) {
      const double c = std::cos(std::numbers::pi * z / 5.7);
      return 0.5 * omega * omega * z * z + depth * c * c;
    };
    const double z_min = goldenMin(1.0, 5.7, v_total);
    const double separation = 2.0 * z_min;
    CHECK(separation > 5.2);
    CHECK(separation < 5.6);
    CHECK(separation < 5.7);  // pulled inside the bare lattice spacing
  }
}

TEST_CASE("ramp sampling is linear and clamped") {
  RampSchedule ramp{1.0, 4.0, 2.0, 8.0, 0.0, 10.0};
  CHECK(rampSample(0.0, ramp).first == doctest::Approx(1.0));
  CHECK(rampSample(0.0, ramp).second == doctest::Approx(4.0));
  CHECK(rampSample(5.0, ramp).first == doctest::Approx(1.5));
  CHECK(rampSample(5.0, ramp).second == doctest::Approx(6.0));
  CHECK(rampSample(11.0, ramp).first == 2.0);
  CHECK(rampSample(1e9, ramp).second == 8.0);
}

TEST_CASE("cubic nonlinearity is linear in density") {
  UnitSystem u;
  const double omega_perp = u.omegaFromHz(890.0);
  const auto spec = NonlinearSpec::gpe1d(omega_perp, 5.3e-3, 1700.0);
  CHECK(spec.g1 == doctest::Approx(2.0 * omega_perp * 5.3e-3 * 1700.0));

  std::vector<double> n = {0.0, 0.01, 0.05, 0.075};
  const auto g = gpe1dNonlinearity(spec, n);
  CHECK(g[0] == 0.0);
  CHECK(g[2] == doctest::Approx(5.0 * g[1]).epsilon(1e-12));
  CHECK(g[3] == doctest::Approx(spec.g1 * 0.075).epsilon(1e-12));
}

TEST_CASE("npse term: gauge, weak-density limit and monotonicity") {
  UnitSystem u;
  const double omega_perp = u.omegaFromHz(890.0);
  const auto spec = NonlinearSpec::npse(omega_perp, 5.3e-3, 1700.0);

  SUBCASE("gauged value at zero density is zero") {
    std::vector<double> n = {0.0};
    CHECK(npseNonlinearity(spec, n)[0] == doctest::Approx(0.0).epsilon(1e-14));
  }

  SUBCASE("small-n slope equals the cubic coefficient") {
    // Richardson-extrapolated numeric slope at n = 0
    auto slope = [&](double h) {
      std::vector<double> n = {h};
      return npseNonlinearity(spec, n)[0] / h;
    };
    const double s1 = slope(1e-6), s2 = slope(5e-7);
    const double s0 = 2.0 * s2 - s1;  // leading error is linear in h
    CHECK(std::abs(s0 - spec.g1) / spec.g1 < 1e-6);
  }

  SUBCASE("non-decreasing in density") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(0.0, 0.3);
    std::vector<double> n(64);
    for (auto& x : n) x = dist(rng);
    std::sort(n.begin(), n.end());
    const auto g = npseNonlinearity(spec, n);
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] >= g[i - 1]);
  }

  SUBCASE("energy density is the primitive of the potential term") {
    NpseNonlinearity nl(5.3e-3, 1700.0, omega_perp);
    for (double n0 : {0.01, 0.05, 0.1, 0.2}) {
      const double h = 1e-6 * n0;
      std::vector<double> np = {n0 + h}, nm = {n0 - h}, nc = {n0};
      std::vector<double> fp(1), fm(1), g(1);
      nl.energyDensity(np, 0.0, fp);
      nl.energyDensity(nm, 0.0, fm);
      nl.evaluate(nc, 0.0, g);
      const double fd = (fp[0] - fm[0]) / (2.0 * h);
      CHECK(std::abs(fd - g[0]) < 1e-6 * std::abs(g[0]));
    }
  }

  SUBCASE("violated density precondition aborts") {
    NpseNonlinearity attractive(-5.3e-3, 1700.0, omega_perp);
    std::vector<double> n = {1.0};
    std::vector<double> g(1);
    CHECK_THROWS_AS(attractive.evaluate(n, 0.0, g), NumericalError);
  }
}

TEST_CASE("npse equals the 1D GPE in the weak-density limit") {
  // 2 a_s N n < 1e-3 everywhere: both evolutions agree to 1e-4 sup norm
  const auto grid = Grid1D::make(512, 25.6);
  const double omega_z = 0.4557, omega_perp = 7.65;
  const double a_s = 1e-3, atoms = 1.0;
  const auto spec_g = NonlinearSpec::gpe1d(omega_perp, a_s, atoms);
  const auto spec_n = NonlinearSpec::npse(omega_perp, a_s, atoms);
  auto nl_g = makeNonlinearity(spec_g);
  auto nl_n = makeNonlinearity(spec_n);
  auto trap = staticPotential(harmonicPotential(*grid, omega_z));

  GroundStateOptions gopt;
  gopt.tol = 1e-9;
  Wavefunction psi = groundStateImaginaryTime(grid, trap, *nl_g, gopt).psi;
  double x_max = 0.0;
  for (const auto& v : psi.values) x_max = std::max(x_max, 2.0 * a_s * atoms * std::norm(v));
  REQUIRE(x_max < 1e-3);

  for (int i = 0; i < grid->size(); ++i) {
    psi.values[i] *= std::polar(1.0, 0.05 * grid->z()[i]);
  }
  const double period = 2.0 * std::numbers::pi / omega_z;
  EvolveOptions opt{2e-3, std::lround(10.0 * period / 2e-3), 0};
  const auto out_g = evolveRealTime(psi, trap, *nl_g, opt);
  const auto out_n = evolveRealTime(psi, trap, *nl_n, opt);

  const auto ng = density(out_g);
  const auto nn = density(out_n);
  double sup = 0.0;
  for (std::size_t i = 0; i < ng.size(); ++i) sup = std::max(sup, std::abs(ng[i] - nn[i]));
  CHECK(sup < 1e-4);
}

TEST_CASE("soliton imprinting") {
  const auto grid = Grid1D::make(512, 25.6);
  const double omega = 1.0, g1 = 30.0;
  CubicNonlinearity nl(g1);
  auto trap = staticPotential(harmonicPotential(*grid, omega));
  GroundStateOptions gopt;
  gopt.tol = 1e-9;
  const auto gs = groundStateImaginaryTime(grid, trap, nl, gopt);
  const double mu = gs.chemical_potential;

  SUBCASE("rest pair: density zeros at +-z0 and pi phase jumps") {
    const Wavefunction psi = imprintSolitonPair(gs.psi, 2.0, 0.0, mu);
    const auto n = density(psi);
    const int ip = grid->indexOf(2.0), im = grid->indexOf(-2.0);
    const double bg = n[grid->indexOf(1.0)];
    CHECK(n[ip] < 1e-10 * bg);
    CHECK(n[im] < 1e-10 * bg);

    const auto detections = detectSolitons(n, *grid);
    REQUIRE(detections.size() == 2);
    CHECK(detections[0].position == doctest::Approx(-2.0).epsilon(1e-3));
    CHECK(detections[1].position == doctest::Approx(2.0).epsilon(1e-3));

    const auto phase = phaseProfile(psi);
    const double xi = healingLength(mu);
    auto jump = [&](double z0) {
      return std::abs(phase[grid->indexOf(z0 + 5 * xi)] -
                      phase[grid->indexOf(z0 - 5 * xi)]);
    };
    CHECK(jump(2.0) == doctest::Approx(std::numbers::pi).epsilon(1e-6));
    CHECK(jump(-2.0) == doctest::Approx(std::numbers::pi).epsilon(1e-6));
  }

  SUBCASE("moving pair on a uniform background dips to 1 - B^2") {
    Wavefunction flat(grid);
    for (auto& v : flat.values) v = 1.0;
    normalize(flat);
    const double mu_flat = 10.0;
    const double c = soundSpeed(mu_flat);
    const Wavefunction psi = imprintSolitonPair(flat, 3.0, 0.6 * c, mu_flat);
    const auto n = density(psi);
    const double plateau = n[grid->indexOf(-10.0)];
    double dip = plateau;
    for (int i = grid->indexOf(2.0); i <= grid->indexOf(4.0); ++i) {
      dip = std::min(dip, n[i]);
    }
    CHECK(dip / plateau == doctest::Approx(0.36).epsilon(0.02));
  }

  SUBCASE("supersonic velocity and out-of-cloud offsets are rejected") {
    CHECK_THROWS_AS(imprintSolitonPair(gs.psi, 2.0, 1.1 * soundSpeed(mu), mu),
                    ValidationError);
    CHECK_THROWS_AS(imprintSoliton(gs.psi, 12.0, 0.0, mu), ValidationError);
  }

  SUBCASE("black soliton at the center stays within one grid step for 5 periods") {
    const Wavefunction psi = imprintSoliton(gs.psi, 0.0, 0.0, mu);
    const double period = 2.0 * std::numbers::pi / omega;
    const double dt = 6e-4;
    DetectOptions detect;
    double max_excursion = 0.0;
    EvolveOptions opt{dt, std::lround(5.0 * period / dt), 1000};
    evolveRealTime(psi, trap, nl, opt, [&](long, const Wavefunction& p) {
      const auto found = detectSolitons(density(p), *grid, detect);
      REQUIRE(!found.empty());
      double best = found[0].position;
      double best_contrast = found[0].contrast;
      for (const auto& d : found) {
        if (d.contrast > best_contrast) {
          best = d.position;
          best_contrast = d.contrast;
        }
      }
      max_excursion = std::max(max_excursion, std::abs(best));
    });
    CHECK(max_excursion < grid->dz());
  }
}

TEST_CASE("critical distance reproduces the printed value and its scalings") {
  const double dc = criticalDistanceM(1500.0, 5.3e-9, 63.0, kMassRb87) * 1e6;
  CHECK(dc == doctest::Approx(25.8).epsilon(0.1 / 25.8));

  const double base = criticalDistanceM(1000.0, 5e-9, 60.0, kMassRb87);
  CHECK(criticalDistanceM(8000.0, 5e-9, 60.0, kMassRb87) ==
        doctest::Approx(2.0 * base).epsilon(1e-12));
  CHECK(criticalDistanceM(1000.0, 5e-9, 480.0, kMassRb87) ==
        doctest::Approx(0.5 * base).epsilon(1e-12));
  CHECK_THROWS_AS(criticalDistanceM(-1.0, 5e-9, 60.0, kMassRb87), ValidationError);
}

TEST_CASE("healing length and sound speed identities") {
  CHECK(healingLength(1.0) == doctest::Approx(1.0));
  CHECK(soundSpeed(1.0) == doctest::Approx(1.0));
  CHECK(healingLength(4.0) == doctest::Approx(0.5));
  CHECK(soundSpeed(4.0) == doctest::Approx(2.0));
  for (double mu : {0.3, 1.7, 9.2}) {
    CHECK(healingLength(mu) * soundSpeed(mu) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(healingLength(mu) * mu == doctest::Approx(soundSpeed(mu)).epsilon(1e-14));
  }
}

}  // TEST_SUITE
