#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "excomp/propagation.hpp"
#include "excomp/reference.hpp"

using namespace excomp;
using fock::Complex;

namespace {

medium::MediumParams bench_params() {
  medium::MediumParams p;
  p.omega0 = 10.0;
  p.delta_omega = 1.0;
  p.mu_sq = 0.5 / (4.0 * 3.14159265358979323846);
  p.vol = 1.0;
  p.rho = 1.0;
  p.gamma = 0.0;
  return p;
}

medium::OpticalResponse bench_response() {
  return medium::refractive_indices(12.0, bench_params());
}

}  // namespace

TEST_CASE("electric and magnetic channel coefficients multiply to unit flux") {
  const auto resp = bench_response();
  for (double z : {0.0, 0.7, 2.9}) {
    const auto e = propagation::FieldMode::electric(z, resp);
    const auto h = propagation::FieldMode::magnetic(z, resp);
    CHECK(std::abs(std::conj(e.c_coh) * h.c_coh - Complex(-1.0, 0.0)) <= 1e-13);
    CHECK(std::abs(std::conj(e.c_inc) * h.c_inc - Complex(-1.0, 0.0)) <= 1e-13);
  }
}

TEST_CASE("displacement factor starts at the index mismatch and beats periodically") {
  const auto resp = bench_response();
  const Complex mean_a(0.8, -0.3);
  const Complex at_zero = propagation::displacement_factor(0.0, mean_a, resp);
  const Complex expected =
      mean_a * (std::sqrt(resp.n2 / resp.n1) - 1.0);
  CHECK(std::abs(at_zero - expected) <= 1e-14);

  const double L0 = resp.beat_length;
  REQUIRE(std::isfinite(L0));
  for (double z : {0.0, 0.31 * L0, 0.77 * L0}) {
    const Complex here = propagation::displacement_factor(z, mean_a, resp);
    const Complex there = propagation::displacement_factor(z + L0, mean_a, resp);
    CHECK(std::abs(here - there) <= 1e-12);
  }
  CHECK(std::abs(propagation::displacement_factor(0.5 * L0, mean_a, resp) -
                 at_zero) > 1e-3);
}

TEST_CASE("coherent states stay coherent under the density transform") {
  const fock::HilbertSpace s(48);
  const Complex beta(1.1, 0.0);
  const Complex kappa(0.4, -0.3);
  const auto built = states::build_state(states::CoherentSpec{beta}, s);

  const auto moved = propagation::transform_density(built.rho, kappa);
  CHECK(moved.trace_drift <= 1e-10);

  const auto target =
      states::build_state(states::CoherentSpec{beta + kappa}, s);
  REQUIRE(target.psi.has_value());
  const double fidelity =
      (target.psi->amps().adjoint() * moved.rho.elems() * target.psi->amps())(0)
          .real();
  CHECK(fidelity >= 1.0 - 1e-10);

  // Cross-oracle: the same conjugation through the matrix exponential.
  const auto moved_exp = propagation::transform_density_exp(built.rho, kappa);
  CHECK((moved.rho.elems() - moved_exp.rho.elems()).cwiseAbs().maxCoeff() <=
        1e-10);
}

TEST_CASE("zero displacement short-circuits exactly") {
  const fock::HilbertSpace s(32);
  const auto built = states::build_state(states::ThermalSpec{0.8}, s);
  const auto moved = propagation::transform_density(built.rho, Complex(0, 0));
  CHECK(moved.trace_drift == 0.0);
  CHECK((moved.rho.elems() - built.rho.elems()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("an overdriven transform reports the trace loss") {
  const fock::HilbertSpace s(12);
  const auto built = states::build_state(states::CoherentSpec{Complex(0.9, 0)}, s);
  CHECK_THROWS_AS(propagation::transform_density(built.rho, Complex(2.5, 0.0)),
                  TruncationError);
}

TEST_CASE("number states ride the medium untouched") {
  const fock::HilbertSpace s(24);
  const auto built = states::build_state(states::FockSpec{3}, s);
  const auto resp = bench_response();
  const std::vector<double> zs{0.0, 0.9, 1.7, 2.6, 3.1};

  const auto rows = propagation::propagate_scan(built, resp, zs, 1);
  REQUIRE(rows.size() == zs.size());
  for (const auto& row : rows) {
    CHECK(row.kappa == Complex(0.0, 0.0));
    CHECK(row.trace_drift == 0.0);
    REQUIRE(row.g2.has_value());
    CHECK(*row.g2 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(row.flux == doctest::Approx(3.0).epsilon(1e-12));
  }

  // Row-for-row determinism across worker counts.
  const auto rows3 = propagation::propagate_scan(built, resp, zs, 3);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].kappa == rows3[i].kappa);
    CHECK(rows[i].flux == rows3[i].flux);
    CHECK(*rows[i].g2 == *rows3[i].g2);
    CHECK(rows[i].trace_drift == rows3[i].trace_drift);
  }
}

TEST_CASE("displaced two-level closed form matches the exponential route") {
  const fock::HilbertSpace s(40);
  const Complex beta0(0.6, 0.0);
  const Complex beta1(0.0, 0.8);
  const Complex kappa(0.8, -0.5);

  const auto closed = propagation::fock_qubit_closed(beta0, beta1, kappa, s);

  fock::Vector bare = fock::Vector::Zero(40);
  bare(0) = beta0;
  bare(1) = beta1;
  const fock::Vector displaced =
      fock::displacement_exp(-kappa, s).elems() * bare;

  const int block = fock::certified_levels(s, std::abs(kappa));
  REQUIRE(block > 0);
  const double diff =
      (closed.amps().head(block) - displaced.head(block)).cwiseAbs().maxCoeff();
  CHECK(diff <= 1e-10);

  CHECK_THROWS_AS(propagation::fock_qubit_closed(beta0, beta1,
                                                 Complex(4.0, 0.0),
                                                 fock::HilbertSpace(12)),
                  TruncationError);
}

TEST_CASE("closed-form coherence reduces to the bare ratio at zero displacement") {
  const fock::HilbertSpace s(24);
  const fock::HilbertSpace support(20);
  const auto a = fock::annihilation(s);
  for (std::uint64_t seed : {11ULL, 12ULL, 13ULL, 14ULL}) {
    // Keep the top levels empty so the literal moment oracle stays exact.
    const auto low = reference::random_pure_state(seed, support);
    fock::Vector amps = fock::Vector::Zero(s.dim());
    amps.head(support.dim()) = low.amps();
    const auto psi = fock::StateVector::from_amplitudes(s, amps);
    const auto rho = fock::DensityMatrix::pure(psi);
    const auto g2 = propagation::g2_closed_form_at_kappa(
        psi, Complex(0, 0), Complex(1, 0), Complex(0, 0));
    REQUIRE(g2.has_value());
    const double num = reference::normally_ordered_moment(rho, a, 2, 2).real();
    const double den = reference::normally_ordered_moment(rho, a, 1, 1).real();
    const double bare = num / (den * den);
    CHECK(std::abs(*g2 - bare) <= 1e-12 * (1.0 + bare));
  }

  // Number states freeze the textbook ladder of values.
  for (int n : {1, 2, 5, 9}) {
    fock::Vector v = fock::Vector::Zero(24);
    v(n) = 1.0;
    const auto psi = fock::StateVector::from_amplitudes(s, v);
    const auto g2 = propagation::g2_closed_form_at_kappa(
        psi, Complex(0, 0), Complex(1, 0), Complex(0, 0));
    REQUIRE(g2.has_value());
    CHECK(*g2 == doctest::Approx((n - 1.0) / n).epsilon(1e-14));
  }

  // The vacuum has no mean photon number to normalize by.
  fock::Vector vac = fock::Vector::Zero(24);
  vac(0) = 1.0;
  const auto psi0 = fock::StateVector::from_amplitudes(s, vac);
  CHECK_FALSE(propagation::g2_closed_form_at_kappa(psi0, Complex(0, 0),
                                                   Complex(1, 0), Complex(0, 0))
                  .has_value());
}

TEST_CASE("closed-form and moment coherence agree along the scan") {
  const auto resp = bench_response();
  const fock::HilbertSpace s(24);
  const double z = 0.37 * resp.beat_length;
  for (std::uint64_t seed : {21ULL, 22ULL, 23ULL, 24ULL, 25ULL}) {
    const auto psi = reference::random_pure_state(seed, s);
    const auto rho = fock::DensityMatrix::pure(psi);
    const Complex mean_a = fock::mean_annihilation(psi);
    const auto closed = propagation::g2_closed_form(psi, z, resp, mean_a);
    const auto moments = propagation::g2_from_moments(rho, z, resp, mean_a);
    REQUIRE(closed.has_value());
    REQUIRE(moments.has_value());
    CHECK(std::abs(*closed - *moments) <= 1e-11 * (1.0 + *closed));
  }
}

TEST_CASE("coherent light keeps Poissonian statistics everywhere") {
  const auto resp = bench_response();
  const fock::HilbertSpace s(48);
  const auto built = states::build_state(states::CoherentSpec{Complex(1.1, 0)}, s);
  const Complex mean_a = fock::mean_annihilation(built.rho);
  for (double frac : {0.0, 0.3, 0.7}) {
    const auto g2 = propagation::g2_closed_form(*built.psi,
                                                frac * resp.beat_length, resp,
                                                mean_a);
    REQUIRE(g2.has_value());
    CHECK(*g2 == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("moment route covers mixed states and lossy media") {
  const auto resp = bench_response();
  const fock::HilbertSpace s(48);

  const auto thermal = states::build_state(states::ThermalSpec{0.8}, s);
  const auto g2 = propagation::g2_from_moments(thermal.rho, 0.9, resp,
                                               Complex(0, 0));
  REQUIRE(g2.has_value());
  CHECK(*g2 == doctest::Approx(2.0).epsilon(1e-10));

  medium::MediumParams lossy = bench_params();
  lossy.gamma = 0.05;
  const auto lossy_resp = medium::refractive_indices(12.0, lossy);
  const auto coh = states::build_state(states::CoherentSpec{Complex(1.2, 0)}, s);
  const Complex mean_a = fock::mean_annihilation(coh.rho);
  CHECK_THROWS_AS(
      propagation::g2_closed_form(*coh.psi, 0.4, lossy_resp, mean_a),
      ValidationError);
  const auto lossy_g2 =
      propagation::g2_from_moments(coh.rho, 0.4, lossy_resp, mean_a);
  REQUIRE(lossy_g2.has_value());
  CHECK(*lossy_g2 == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("poynting flux is a constant of the motion for real indices") {
  const auto resp = bench_response();

  const fock::HilbertSpace s40(40);
  const auto coh = states::build_state(states::CoherentSpec{Complex(1.2, 0)}, s40);
  std::vector<double> fluxes;
  for (double z : {0.0, 0.4, 1.1, 2.3, 3.0}) {
    fluxes.push_back(propagation::poynting_flux(coh.rho, z, resp));
  }
  for (double f : fluxes) {
    CHECK(f == doctest::Approx(1.44).epsilon(1e-9));
    CHECK(std::abs(f - fluxes.front()) <= 1e-12 * fluxes.front());
  }

  const fock::HilbertSpace s32(32);
  const auto thermal = states::build_state(states::ThermalSpec{0.8}, s32);
  CHECK(propagation::poynting_flux(thermal.rho, 1.3, resp) ==
        doctest::Approx(0.8).epsilon(1e-10));

  // Loss drains the flux monotonically.
  medium::MediumParams lossy = bench_params();
  lossy.gamma = 0.05;
  const auto lossy_resp = medium::refractive_indices(12.0, lossy);
  const double front = propagation::poynting_flux(coh.rho, 0.0, lossy_resp);
  const double back = propagation::poynting_flux(coh.rho, 0.8, lossy_resp);
  CHECK(back < front);
}

TEST_CASE("plane-wave channels satisfy the wave equation to stencil accuracy") {
  const auto resp = bench_response();
  const double L0 = resp.beat_length;
  const double fine = propagation::wave_equation_residual(resp, 0.4 * L0,
                                                          L0 / 2048.0);
  CHECK(fine <= 1e-6);
  const double coarse = propagation::wave_equation_residual(resp, 0.4 * L0,
                                                            L0 / 16.0);
  CHECK(fine < coarse);
}

TEST_CASE("scans refuse evanescent zones") {
  const auto forbidden = medium::refractive_indices(10.3, bench_params());
  REQUIRE(forbidden.forbidden);
  const fock::HilbertSpace s(16);
  const auto built = states::build_state(states::FockSpec{1}, s);
  CHECK_THROWS_AS(propagation::propagate_scan(built, forbidden, {0.0, 1.0}, 2),
                  ForbiddenZoneError);
}
