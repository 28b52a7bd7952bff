#include <cmath>
#include <complex>

#include "doctest.h"
#include "excomp/medium.hpp"

using namespace excomp;
using fock::Complex;

namespace {

// Dimensionless benchmark: coupling 0.5, resonances at 10 and 11.
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

}  // namespace

TEST_CASE("parameter validation") {
  medium::MediumParams p = bench_params();
  CHECK_NOTHROW(p.validate());
  p.vol = 0.0;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p = bench_params();
  p.gamma = -1.0;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p = bench_params();
  p.eps_host = -2.0;
  CHECK_THROWS_AS(p.validate(), ValidationError);

  CHECK(bench_params().coupling() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(bench_params().omega1() == 11.0);
  CHECK(bench_params().omega2() == 10.0);
}

TEST_CASE("lossless indices at a detuning of two linewidth-free units") {
  const auto p = bench_params();
  const auto resp = medium::refractive_indices(12.0, p);

  // omega - omega1 = 1, omega - omega2 = 2 with coupling 0.5:
  // n1^2 = 1 - 0.5, n2^2 = 1 - 0.25.
  CHECK(resp.n_sq1.real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(resp.n_sq2.real() == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(resp.n_sq1.imag() == 0.0);
  CHECK(resp.n1.real() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(resp.n2.real() == doctest::Approx(std::sqrt(0.75)).epsilon(1e-14));
  CHECK(resp.k == doctest::Approx(12.0).epsilon(1e-15));
  CHECK_FALSE(resp.forbidden);

  // The partial amplitudes keep the exact detuning ratio.
  CHECK(std::abs(resp.f2 - 0.5 * resp.f1) <= 1e-16 * std::abs(resp.f1));

  // Index / amplitude consistency: n^2 - 1 - 4 pi rho f / k^2 = 0.
  const double four_pi_rho = 4.0 * 3.14159265358979323846 * p.rho;
  const Complex res1 =
      resp.n_sq1 - 1.0 - four_pi_rho * resp.f1 / (resp.k * resp.k);
  const Complex res2 =
      resp.n_sq2 - 1.0 - four_pi_rho * resp.f2 / (resp.k * resp.k);
  CHECK(std::abs(res1) <= 1e-14);
  CHECK(std::abs(res2) <= 1e-14);

  // Beat length against the defining expression.
  const double expected =
      2.0 * 3.14159265358979323846 /
      ((std::sqrt(0.75) - std::sqrt(0.5)) * 12.0);
  CHECK(resp.beat_length == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("gaussian units scale the wavenumber by c") {
  medium::MediumParams p = bench_params();
  p.units = medium::Units::gaussian;
  p.omega0 = 1.0e15;
  p.delta_omega = 1.0e13;
  p.eps_host = 2.25;
  const auto resp = medium::refractive_indices(2.99792458e15, p);
  CHECK(resp.k == doctest::Approx(2.99792458e15 * 1.5 / 2.99792458e10)
                      .epsilon(1e-12));
}

TEST_CASE("poles and forbidden zones") {
  const auto p = bench_params();
  CHECK_THROWS_AS(medium::refractive_indices(10.0, p), PoleError);
  CHECK_THROWS_AS(medium::refractive_indices(11.0, p), PoleError);

  medium::MediumParams lossy = p;
  lossy.gamma = 0.05;
  const auto resp = medium::refractive_indices(10.0, lossy);
  CHECK_FALSE(resp.forbidden);
  CHECK(std::isfinite(resp.n1.real()));
  CHECK(resp.n_sq2.imag() != 0.0);

  // Just above the bare resonance the lossless squared index turns negative.
  const auto evanescent = medium::refractive_indices(10.3, p);
  CHECK(evanescent.forbidden);
  CHECK(evanescent.n_sq2.real() == doctest::Approx(1.0 - 0.5 / 0.3).epsilon(1e-12));
  // Principal root of a negative real: on the +i axis.
  CHECK(evanescent.n2.real() == 0.0);
  CHECK(evanescent.n2.imag() ==
        doctest::Approx(std::sqrt(0.5 / 0.3 - 1.0)).epsilon(1e-12));

  medium::MediumParams lossy_evanescent = p;
  lossy_evanescent.gamma = 0.05;
  CHECK_FALSE(medium::refractive_indices(10.3, lossy_evanescent).forbidden);

  CHECK_THROWS_AS(medium::refractive_indices(-1.0, p), ValidationError);
}

TEST_CASE("degenerate species leave no beat") {
  medium::MediumParams p = bench_params();
  p.delta_omega = 0.0;
  const auto resp = medium::refractive_indices(12.0, p);
  CHECK(std::isinf(resp.beat_length));
  CHECK(std::abs(resp.n1 - resp.n2) == 0.0);

  medium::MediumParams empty = bench_params();
  empty.mu_sq = 0.0;
  const auto vac = medium::refractive_indices(12.0, empty);
  CHECK(vac.n1 == Complex(1.0, 0.0));
  CHECK(std::isinf(vac.beat_length));
}

TEST_CASE("forward amplitude operator solves its defining equation") {
  const auto p = bench_params();
  const auto resp = medium::refractive_indices(12.0, p);
  const fock::HilbertSpace s(16);
  const Complex mean_a(0.3, -1.1);

  const auto fhat = medium::forward_amplitude_operator(mean_a, resp, s);
  const auto residual =
      medium::forward_amplitude_residual(fhat, mean_a, resp.f1, resp.f2, s);
  const double defect =
      residual.elems().topLeftCorner(15, 15).cwiseAbs().maxCoeff();
  CHECK(defect <= 1e-14 * std::abs(resp.f1));
}

TEST_CASE("permittivity operator agrees between its two constructions") {
  const auto p = bench_params();
  const auto resp = medium::refractive_indices(12.0, p);
  const fock::HilbertSpace s(16);
  const Complex mean_a(0.9, 0.4);

  const auto perm = medium::permittivity_operator(mean_a, resp, s);
  const auto fhat = medium::forward_amplitude_operator(mean_a, resp, s);
  const double four_pi_rho = 4.0 * 3.14159265358979323846 * p.rho;
  const auto alt = fock::OperatorMatrix::identity(s) +
                   Complex(four_pi_rho / (resp.k * resp.k), 0.0) * fhat;
  CHECK((perm.elems() - alt.elems()).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("polarizability equals the symmetrized amplitude sandwich") {
  const auto p = bench_params();
  const double omega = 12.0;
  const auto resp = medium::refractive_indices(omega, p);
  const fock::HilbertSpace s(16);
  const Complex mean_a(0.8, -0.2);
  const Complex mean_E0 = Complex(0.0, 1.0) * mean_a;

  const auto pol = medium::polarizability_operator(omega, p, mean_E0, s);

  const auto fhat = medium::forward_amplitude_operator(mean_a, resp, s);
  const auto e0 = Complex(0.0, 1.0) * fock::annihilation(s);
  const auto sandwich =
      (1.0 / (2.0 * resp.k * resp.k)) * (fhat * e0 + e0 * fhat);
  const double defect = (pol.elems() - sandwich.elems())
                            .topLeftCorner(15, 15)
                            .cwiseAbs()
                            .maxCoeff();
  CHECK(defect <= 1e-15);
}

TEST_CASE("envelope grids are normalized with consistent volumes") {
  const auto ball = medium::EnvelopeGrid::ball(12);
  CHECK(ball.integral() == doctest::Approx(1.0).epsilon(1e-12));
  // Staircase ball volume close to 4 pi / 3.
  CHECK(ball.support_volume() ==
        doctest::Approx(4.18879).epsilon(2e-2));
  // Uniform envelope: integral of |env|^4 times the volume is one.
  CHECK(ball.quartic_integral() * ball.support_volume() ==
        doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(medium::EnvelopeGrid::ball(1), ValidationError);
  CHECK_THROWS_AS(medium::EnvelopeGrid::ellipsoid(8, 1.0, -1.0, 1.0),
                  ValidationError);
}

TEST_CASE("ball depolarization quadrature recovers the isotropic third") {
  const auto ball = medium::EnvelopeGrid::ball(12);
  const auto result =
      medium::depolarization_tensor(ball, ball.support_volume());

  const Eigen::Matrix3d target = medium::depolarization_tensor_uniform_sphere();
  CHECK((result.tensor - target).cwiseAbs().maxCoeff() <= 0.02);
  CHECK(std::abs(result.tensor.trace() - 1.0) <= 1e-9);
  // Cubic symmetry kills the off-diagonals outright, and it also makes the
  // excluded-shell difference cancel globally, so the error estimate is tiny.
  Eigen::Matrix3d off = result.tensor;
  off.diagonal().setZero();
  CHECK(off.cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(result.error_estimate <= 1e-12);
}

TEST_CASE("prolate envelopes depolarize less along their long axis") {
  const auto prolate = medium::EnvelopeGrid::ellipsoid(16, 0.5, 0.5, 1.0);
  medium::QuadratureOptions opts;
  opts.tolerance = 0.05;  // anisotropic staircase: slower shell cancellation
  const auto result =
      medium::depolarization_tensor(prolate, prolate.support_volume(), opts);
  const double nxx = result.tensor(0, 0);
  const double nzz = result.tensor(2, 2);
  // Analytic prolate 2:1 factors: 0.4132 transverse, 0.1736 longitudinal.
  CHECK(std::abs(nxx - 0.4132) <= 0.05);
  CHECK(std::abs(nzz - 0.1736) <= 0.05);
  CHECK(nxx - nzz > 0.15);
  CHECK(std::abs(result.tensor.trace() - 1.0) <= 1e-9);

  // A tolerance below the honest error estimate must refuse the result.
  medium::QuadratureOptions strict;
  strict.tolerance = 0.01;
  CHECK_THROWS_AS(
      medium::depolarization_tensor(prolate, prolate.support_volume(), strict),
      AccuracyError);
}

TEST_CASE("depolarization shift is the projected tensor quadratic form") {
  const Eigen::Vector3d mu(0.0, 0.0, 2.0);
  const Eigen::Matrix3d n = medium::depolarization_tensor_uniform_sphere();
  const double shift = medium::depolarization_shift(mu, 2.0, n, 1.0);
  const double expected =
      4.0 * 3.14159265358979323846 / 2.0 * (4.0 / 3.0);
  CHECK(shift == doctest::Approx(expected).epsilon(1e-14));
}
