#pragma once

// Independent reference implementations used to certify the fast paths:
// power-series special functions, seeded random states, literal
// normally-ordered moments, a Monte Carlo depolarization estimator, two-mode
// helpers, and the property-check suite behind the verify command.

#include <cstdint>
#include <string>
#include <vector>

#include "excomp/fock.hpp"
#include "excomp/medium.hpp"

namespace excomp::reference {

using fock::Complex;

// ---------------------------------------------------------------------------
// Special-function oracle

// Generalized Laguerre polynomial from its finite power series
//   sum_i (-1)^i C(p + alpha, p - i) x^i / i!
// accumulated in long double; slower and independent of the recurrence.
// condition_scale, when given, receives the sum of term magnitudes, the
// natural scale against which agreement should be measured.
double laguerre_series(int p, int alpha, double x,
                       double* condition_scale = nullptr);

// ---------------------------------------------------------------------------
// Seeded random states

// Haar-like random pure state: i.i.d. complex Gaussian amplitudes,
// normalized. The Gaussians come from a hand-rolled Box-Muller transform over
// mt19937_64 bits, so results are identical across platforms and library
// versions.
fock::StateVector random_pure_state(std::uint64_t seed,
                                    const fock::HilbertSpace& space);

// Random rank-limited mixture of such pure states with random weights.
fock::DensityMatrix random_density_matrix(std::uint64_t seed,
                                          const fock::HilbertSpace& space,
                                          int rank);

// ---------------------------------------------------------------------------
// Literal moments

// tr(rho (A^dag)^j A^l) by repeated matrix products. Throws TruncationError
// when the top-level population of rho exceeds 1e-10, since the product then
// probes the cutoff.
Complex normally_ordered_moment(const fock::DensityMatrix& rho,
                                const fock::OperatorMatrix& alpha_op, int j,
                                int l);

// ---------------------------------------------------------------------------
// Monte Carlo depolarization

struct McEstimate {
  Eigen::Matrix3d tensor;
  Eigen::Matrix3d stderr_;  // per-component standard error
  double trace = 0.0;
  double trace_stderr = 0.0;
  std::uint64_t samples = 0;
};

// Pair-sampling Monte Carlo estimate of the depolarization tensor of an
// envelope grid. First points are allocated over cells proportionally to
// their weight (largest-remainder rounding, hence deterministic); second
// points are drawn from the weight distribution; both are jittered uniformly
// within their cells. Pairs closer than exclusion_radius (0 means one grid
// spacing) contribute zero, which is bias-free for centrally symmetric
// envelopes.
McEstimate mc_depolarization(const medium::EnvelopeGrid& grid, double volume,
                             std::uint64_t samples, std::uint64_t seed,
                             double exclusion_radius = 0.0);

// ---------------------------------------------------------------------------
// Two-mode helpers

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

// Lowering operators of the forward / backward modes on the tensor-product
// space of two copies of `space`.
Eigen::MatrixXcd two_mode_lowering_fwd(const fock::HilbertSpace& space);
Eigen::MatrixXcd two_mode_lowering_bwd(const fock::HilbertSpace& space);

// ---------------------------------------------------------------------------
// Property suite

enum class Profile { quick, full };

struct PropertyResult {
  std::string name;
  bool pass = false;
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::uint64_t worst_seed = 0;
  int cases = 0;
};

// Runs the seeded property checks over every module. The quick profile keeps
// the runtime well under half a minute; the full profile adds the Monte Carlo
// depolarization estimate and larger case counts.
std::vector<PropertyResult> run_suite(Profile profile);

}  // namespace excomp::reference
