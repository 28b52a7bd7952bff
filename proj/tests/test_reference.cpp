#include <cmath>
#include <complex>

#include "doctest.h"
#include "excomp/reference.hpp"
#include "excomp/states.hpp"

using namespace excomp;
using fock::Complex;

TEST_CASE("the power-series special function matches hand-computed values") {
  CHECK(reference::laguerre_series(0, 5, 2.3) == 1.0);
  CHECK(reference::laguerre_series(1, 3, 0.4) ==
        doctest::Approx(3.6).epsilon(1e-15));
  double cond = 0.0;
  CHECK(reference::laguerre_series(3, 2, 1.7, &cond) ==
        doctest::Approx(-0.5938333333333333).epsilon(1e-13));
  CHECK(cond > 10.0);  // the alternating terms exceed the result
  CHECK_THROWS_AS(reference::laguerre_series(-1, 0, 1.0), ValidationError);
  CHECK_THROWS_AS(reference::laguerre_series(2, -1, 1.0), ValidationError);
}

TEST_CASE("seeded states are deterministic, normalized, and seed-sensitive") {
  const fock::HilbertSpace s(24);

  const auto one = reference::random_pure_state(9, s);
  const auto two = reference::random_pure_state(9, s);
  CHECK((one.amps() - two.amps()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(one.amps().squaredNorm() == doctest::Approx(1.0).epsilon(1e-12));

  const auto other = reference::random_pure_state(10, s);
  CHECK((one.amps() - other.amps()).cwiseAbs().maxCoeff() > 0.05);

  const auto rho = reference::random_density_matrix(9, s, 3);
  CHECK(rho.elems().trace().real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((rho.elems() - rho.elems().adjoint()).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK(rho.purity() < 1.0);
  const auto rho_again = reference::random_density_matrix(9, s, 3);
  CHECK((rho.elems() - rho_again.elems()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("literal moments reproduce the textbook factorial values") {
  const fock::HilbertSpace s(64);
  const auto a = fock::annihilation(s);

  const auto thermal = states::build_state(states::ThermalSpec{0.5}, s);
  CHECK(reference::normally_ordered_moment(thermal.rho, a, 2, 2).real() ==
        doctest::Approx(0.5).epsilon(1e-10));

  const auto coh = states::build_state(states::CoherentSpec{Complex(1.2, -0.3)}, s);
  CHECK(reference::normally_ordered_moment(coh.rho, a, 1, 1).real() ==
        doctest::Approx(1.53).epsilon(1e-10));

  // A state parked at the cutoff makes the product untrustworthy.
  fock::Vector top = fock::Vector::Zero(64);
  top(63) = 1.0;
  const auto parked = fock::DensityMatrix::pure(
      fock::StateVector::from_amplitudes(s, top));
  CHECK_THROWS_AS(reference::normally_ordered_moment(parked, a, 1, 1),
                  TruncationError);
}

TEST_CASE("two-mode helpers build commuting copies of the ladder") {
  Eigen::MatrixXcd small(2, 2);
  small << 1.0, 2.0, 3.0, 4.0;
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
  const Eigen::MatrixXcd left = reference::kron(small, id);
  CHECK(left.rows() == 4);
  CHECK(std::abs(left(0, 2) - Complex(2.0, 0.0)) == 0.0);
  CHECK(std::abs(left(1, 1) - Complex(1.0, 0.0)) == 0.0);

  const fock::HilbertSpace s(6);
  const auto af = reference::two_mode_lowering_fwd(s);
  const auto ab = reference::two_mode_lowering_bwd(s);
  CHECK((af * ab - ab * af).cwiseAbs().maxCoeff() == 0.0);

  // <1,2| (n_f + n_b) |1,2> = 3.
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(36);
  v(1 * 6 + 2) = 1.0;
  const Complex total =
      (v.adjoint() * (af.adjoint() * af + ab.adjoint() * ab) * v)(0);
  CHECK(total.real() == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("the Monte Carlo depolarization estimate is seeded and unbiased") {
  const auto grid = medium::EnvelopeGrid::ball(8);
  const double volume = grid.support_volume();

  const auto est = reference::mc_depolarization(grid, volume, 20000, 77);
  const auto again = reference::mc_depolarization(grid, volume, 20000, 77);
  CHECK((est.tensor - again.tensor).cwiseAbs().maxCoeff() == 0.0);
  CHECK(est.samples == 20000);

  // The pair kernel is traceless, so the trace is pinned by the lead term.
  CHECK(std::abs(est.trace - 1.0) <= 1e-9);

  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double want = i == j ? 1.0 / 3.0 : 0.0;
      CHECK(std::abs(est.tensor(i, j) - want) <=
            5.0 * std::max(est.stderr_(i, j), 1e-3));
    }
  }
}

TEST_CASE("the quick property suite passes end to end") {
  const auto results = reference::run_suite(reference::Profile::quick);
  CHECK(results.size() >= 20);
  for (const auto& r : results) {
    INFO(r.name, ": residual ", r.max_residual, " tolerance ", r.tolerance,
         " worst seed ", r.worst_seed, " cases ", r.cases);
    CHECK(r.pass);
    CHECK(r.cases > 0);
  }
}
