#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gpelab/errors.hpp"
#include "gpelab/grid.hpp"
#include "gpelab/units.hpp"
#include "gpelab/wavefunction.hpp"

using namespace gpelab;

TEST_SUITE("core") {

TEST_CASE("unit system round trips to 1e-12") {
  UnitSystem u;
  CHECK(u.timeUnitS() == doctest::Approx(1.368478e-3).epsilon(1e-4));
  for (double v : {1.0, 53.0, 890.0, 0.005}) {
    CHECK(u.omegaToHz(u.omegaFromHz(v)) == doctest::Approx(v).epsilon(1e-12));
    CHECK(u.frequencyToHz(u.frequencyFromHz(v)) == doctest::Approx(v).epsilon(1e-12));
    CHECK(u.timeToMs(u.timeFromMs(v)) == doctest::Approx(v).epsilon(1e-12));
    CHECK(u.energyToJ(u.energyFromJ(v)) == doctest::Approx(v).epsilon(1e-12));
    CHECK(u.lengthToUm(u.lengthFromUm(v)) == doctest::Approx(v).epsilon(1e-12));
  }
  // energy quoted as h * nu equals the angular-frequency conversion
  CHECK(u.energyFromHHz(1000.0) == doctest::Approx(u.omegaFromHz(1000.0)).epsilon(1e-14));
}

TEST_CASE("grid construction and sampling") {
  const auto grid = Grid1D::make(1024, 102.4);
  CHECK(grid->dz() == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(grid->z().front() == doctest::Approx(-51.2).epsilon(1e-14));
  CHECK(grid->z().back() == doctest::Approx(51.1).epsilon(1e-13));

  // uniform spacing to one part in 1e12
  for (int i = 1; i < grid->size(); ++i) {
    CHECK(grid->z()[i] - grid->z()[i - 1] == doctest::Approx(0.1).epsilon(1e-12));
  }

  const auto small = Grid1D::make(256, 25.6);
  double k_max = 0.0;
  for (double k : small->k()) k_max = std::max(k_max, std::abs(k));
  CHECK(k_max == doctest::Approx(std::numbers::pi / 0.1).epsilon(1e-12));

  CHECK_THROWS_AS(Grid1D(1000, 10.0), ValidationError);
  CHECK_THROWS_AS(Grid1D(128, 10.0), ValidationError);
  CHECK_THROWS_AS(Grid1D(512, -1.0), ValidationError);
}

TEST_CASE("density, norm and phase profile") {
  const auto grid = Grid1D::make(512, 25.6);
  Wavefunction psi(grid);

  SUBCASE("uniform state: flat density and phase") {
    for (auto& v : psi.values) v = {0.3, 0.0};
    normalize(psi);
    CHECK(norm(psi) == doctest::Approx(1.0).epsilon(1e-12));
    const auto n = density(psi);
    const auto ph = phaseProfile(psi);
    for (int i = 1; i < grid->size(); ++i) {
      CHECK(n[i] == doctest::Approx(n[0]).epsilon(1e-12));
      CHECK(ph[i] == doctest::Approx(0.0).epsilon(1e-12));
    }
  }

  SUBCASE("tanh profile carries a pi phase step") {
    const double xi = 0.5;
    for (int i = 0; i < grid->size(); ++i) {
      psi.values[i] = {std::tanh(grid->z()[i] / xi), 0.0};
    }
    normalize(psi);
    const auto ph = phaseProfile(psi);
    const double step = std::abs(ph.back() - ph.front());
    CHECK(step == doctest::Approx(std::numbers::pi).epsilon(1e-9));
  }

  SUBCASE("gaussian ground-state shape is unit normalized") {
    for (int i = 0; i < grid->size(); ++i) {
      const double z = grid->z()[i];
      psi.values[i] = {std::exp(-z * z / 2.0), 0.0};
    }
    normalize(psi);
    CHECK(norm(psi) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

}  // TEST_SUITE
