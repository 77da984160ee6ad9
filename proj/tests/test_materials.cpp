#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "emortal/materials.hpp"

using emortal::MaterialParams;
using emortal::default_cu;

// Frozen from hand-evaluating the definitions with CODATA e and k:
//   beta  = Z*.e.rho/Omega
//   kappa = D0.exp(-Ea/kT).B.Omega/(kT)
namespace {
constexpr double kBetaCu = 3.0549978191e2;    // Pa per (A/m)
constexpr double kKappaCu = 1.7750520433e-18; // m^2/s
}  // namespace

TEST_CASE("beta for the default Cu parameter set") {
    CHECK(default_cu().beta() == doctest::Approx(kBetaCu).epsilon(1e-9));
}

TEST_CASE("beta edge behavior") {
    MaterialParams m = default_cu();
    m.effective_charge = 0.0;
    CHECK(m.beta() == 0.0);

    MaterialParams doubled = default_cu();
    doubled.resistivity *= 2.0;
    CHECK(doubled.beta() == doctest::Approx(2.0 * default_cu().beta()).epsilon(1e-15));
}

TEST_CASE("kappa for the default Cu parameter set") {
    CHECK(default_cu().kappa() == doctest::Approx(kKappaCu).epsilon(1e-9));
}

TEST_CASE("kappa limits") {
    MaterialParams m = default_cu();
    m.activation_energy_ev = 100.0;
    CHECK(m.kappa() < 1e-60);

    MaterialParams cold = default_cu();
    cold.activation_energy_ev = 0.0;
    MaterialParams colder = cold;
    colder.temperature = cold.temperature / 2.0;
    CHECK(colder.kappa() == doctest::Approx(2.0 * cold.kappa()).epsilon(1e-12));
}

TEST_CASE("stress threshold subtracts the thermal offset") {
    MaterialParams m = default_cu();
    CHECK(m.stress_threshold() == doctest::Approx(41e6));
    m.thermal_stress = 5e6;
    CHECK(m.stress_threshold() == doctest::Approx(36e6));
    m.thermal_stress = -5e6;
    CHECK(m.stress_threshold() == doctest::Approx(46e6));
}

TEST_CASE("critical current-length product lands near the published 0.27 A/um") {
    const MaterialParams m = default_cu();
    const double jl_crit = 2.0 * m.stress_threshold() / m.beta();
    CHECK(std::abs(jl_crit * 1e-6 - 0.27) / 0.27 < 0.02);
}

TEST_CASE("validation rejects non-physical parameters") {
    CHECK_NOTHROW(default_cu().validate());

    MaterialParams m = default_cu();
    m.resistivity = -1.0;
    CHECK_THROWS_WITH_AS(m.validate(), doctest::Contains("resistivity"), std::invalid_argument);

    m = default_cu();
    m.temperature = 0.0;
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);

    m = default_cu();
    m.thermal_stress = -1e7;  // any sign is legal
    CHECK_NOTHROW(m.validate());
}
