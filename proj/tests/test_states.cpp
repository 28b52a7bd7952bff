#include <cmath>
#include <complex>

#include "doctest.h"
#include "excomp/states.hpp"

using namespace excomp;
using fock::Complex;

TEST_CASE("number states build exactly") {
  const fock::HilbertSpace s(8);
  const auto built = states::build_state(states::FockSpec{2}, s);
  REQUIRE(built.psi.has_value());
  CHECK(built.psi->amp(2) == Complex(1.0, 0.0));
  CHECK(built.rho.elems()(2, 2) == Complex(1.0, 0.0));
  CHECK(states::mean_amplitude(states::FockSpec{2}, s) == Complex(0.0, 0.0));

  CHECK_THROWS_AS(states::build_state(states::FockSpec{8}, s), ValidationError);
  CHECK_THROWS_AS(states::build_state(states::FockSpec{-1}, s), ValidationError);
}

TEST_CASE("coherent states match their closed-form amplitudes") {
  const fock::HilbertSpace s(32);
  const Complex beta(1.2, 0.0);
  const auto built = states::build_state(states::CoherentSpec{beta}, s);
  REQUIRE(built.psi.has_value());

  const double pref = std::exp(-0.5 * std::norm(beta));
  Complex term(1.0, 0.0);
  for (int n = 0; n < 12; ++n) {
    if (n > 0) term *= beta / std::sqrt(static_cast<double>(n));
    CHECK(std::abs(built.psi->amp(n) - pref * term) <= 1e-13);
  }

  const auto num = fock::number_operator(s);
  CHECK(fock::expectation(built.rho, num).real() ==
        doctest::Approx(std::norm(beta)).epsilon(1e-12));
  CHECK(std::abs(fock::mean_annihilation(built.rho) - beta) <= 1e-12);
  CHECK(states::mean_amplitude(states::CoherentSpec{beta}, s) == beta);
}

TEST_CASE("coherent states too large for the cutoff throw with the captured mass") {
  const fock::HilbertSpace s(8);
  try {
    states::build_state(states::CoherentSpec{Complex(3.0, 0.0)}, s);
    FAIL("expected TruncationError");
  } catch (const TruncationError& e) {
    CHECK(e.captured > 0.0);
    CHECK(e.captured < 1.0 - 1e-10);
  }
}

TEST_CASE("thermal states carry the geometric ladder") {
  const fock::HilbertSpace s(64);
  const double nbar = 0.5;
  const auto built = states::build_state(states::ThermalSpec{nbar}, s);
  CHECK_FALSE(built.psi.has_value());

  const double q = nbar / (1.0 + nbar);
  CHECK(built.rho.elems()(1, 1).real() / built.rho.elems()(0, 0).real() ==
        doctest::Approx(q).epsilon(1e-12));
  const auto num = fock::number_operator(s);
  CHECK(fock::expectation(built.rho, num).real() ==
        doctest::Approx(nbar).epsilon(1e-12));
  // Purity of a geometric ladder: (1 - q) / (1 + q).
  CHECK(built.rho.purity() ==
        doctest::Approx((1.0 - q) / (1.0 + q)).epsilon(1e-12));
  CHECK(states::mean_amplitude(states::ThermalSpec{nbar}, s) ==
        Complex(0.0, 0.0));

  CHECK_THROWS_AS(
      states::build_state(states::ThermalSpec{2.0}, fock::HilbertSpace(40)),
      TruncationError);
  CHECK_NOTHROW(
      states::build_state(states::ThermalSpec{2.0}, fock::HilbertSpace(64)));
  CHECK_THROWS_AS(
      states::build_state(states::ThermalSpec{-0.1}, s), ValidationError);

  // Zero occupation collapses to the vacuum projector.
  const auto vac = states::build_state(states::ThermalSpec{0.0}, s);
  CHECK(vac.rho.elems()(0, 0).real() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("two-level superpositions expose the coherence mean") {
  const fock::HilbertSpace s(6);
  const states::FockQubitSpec spec{Complex(0.6, 0.0), Complex(0.0, 0.8)};
  const auto built = states::build_state(spec, s);
  REQUIRE(built.psi.has_value());
  CHECK(std::abs(built.psi->amp(0) - Complex(0.6, 0.0)) <= 1e-15);
  CHECK(std::abs(built.psi->amp(1) - Complex(0.0, 0.8)) <= 1e-15);

  const Complex expected = std::conj(spec.beta0) * spec.beta1;
  CHECK(std::abs(states::mean_amplitude(spec, s) - expected) <= 1e-15);
  CHECK(std::abs(fock::mean_annihilation(built.rho) - expected) <= 1e-15);

  const states::FockQubitSpec unnormalized{Complex(1.0, 0.0), Complex(1.0, 0.0)};
  CHECK_THROWS_AS(states::build_state(unnormalized, s), ValidationError);
}

TEST_CASE("custom payloads take exactly one form") {
  const fock::HilbertSpace s(4);
  states::CustomSpec both;
  fock::Vector v = fock::Vector::Zero(4);
  v(0) = 1.0;
  both.amps = v;
  both.rho = fock::Matrix::Identity(4, 4) / 4.0;
  CHECK_THROWS_AS(states::build_state(states::StateSpec{both}, s),
                  ValidationError);

  states::CustomSpec neither;
  CHECK_THROWS_AS(states::build_state(states::StateSpec{neither}, s),
                  ValidationError);

  states::CustomSpec pure;
  pure.amps = v;
  const auto built = states::build_state(states::StateSpec{pure}, s);
  REQUIRE(built.psi.has_value());
  CHECK(built.psi->amp(0) == Complex(1.0, 0.0));

  states::CustomSpec mixed;
  mixed.rho = fock::Matrix::Identity(4, 4) / 4.0;
  const auto built_mixed = states::build_state(states::StateSpec{mixed}, s);
  CHECK_FALSE(built_mixed.psi.has_value());
  CHECK(std::abs(states::mean_amplitude(states::StateSpec{mixed}, s)) <= 1e-15);
}
