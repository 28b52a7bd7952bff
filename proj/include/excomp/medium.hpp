#pragma once

// Linear optical response of a two-species excitonic composite: Lorentzian
// forward-scattering amplitudes, statistics-dependent refractive indices,
// operator-valued permittivity, and the depolarization correction obtained
// from an envelope density.

#include <complex>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "excomp/fock.hpp"

namespace excomp::medium {

using fock::Complex;

enum class Units { dimensionless, gaussian };

// ---------------------------------------------------------------------------
// Medium parameters

struct MediumParams {
  double omega0 = 10.0;       // resonance of the unshifted species
  double delta_omega = 1.0;   // shifted species sits at omega0 + delta_omega
  double mu_sq = 1.0;         // squared transition dipole moment
  double vol = 1.0;           // mode quantization volume
  double rho = 1.0;           // emitter number density
  double gamma = 0.0;         // phenomenological linewidth
  double eps_host = 1.0;      // host permittivity (real, positive)
  Units units = Units::dimensionless;

  double hbar() const;
  double c() const;
  double omega1() const { return omega0 + delta_omega; }
  double omega2() const { return omega0; }
  // Oscillator coupling strength: 4 pi rho mu_sq_eff / (hbar vol), where the
  // host screening divides the squared dipole moment.
  double coupling() const;
  void validate() const;
};

// ---------------------------------------------------------------------------
// Frequency-domain response

struct OpticalResponse {
  double omega = 0.0;
  double k = 0.0;  // host wavenumber omega * sqrt(eps_host) / c
  Complex f1, f2;  // forward scattering amplitudes of the two species
  Complex n_sq1, n_sq2;
  Complex n1, n2;  // principal square roots of n_sq1, n_sq2
  // Beat length 2 pi / (|n1 - n2| k); +inf when the indices coincide.
  double beat_length = std::numeric_limits<double>::infinity();
  // Lossless medium with Re(n^2) <= 0 for either species: evanescent zone.
  bool forbidden = false;
};

// Lorentzian partial amplitudes f_j = -k^2 mu_sq_eff / (hbar vol (omega -
// omega_j + i gamma)). Throws PoleError for an exactly resonant lossless
// drive.
struct PartialAmplitudes {
  Complex f1, f2;
};
PartialAmplitudes partial_amplitudes(double omega, const MediumParams& p);

// Full response: n_j^2 = 1 + 4 pi rho f_j / k^2, principal square roots,
// beat length, and the forbidden-zone flag.
OpticalResponse refractive_indices(double omega, const MediumParams& p);

// ---------------------------------------------------------------------------
// Operator-valued response

// Forward amplitude operator 2 <a> (f1 - f2) X + f2, with X the odd-step
// inverse ladder. It solves F a + a F = 2 f2 a + 2 <a> (f1 - f2) exactly on
// the leading (dim-1) block.
fock::OperatorMatrix forward_amplitude_operator(const Complex& mean_a,
                                                const OpticalResponse& resp,
                                                const fock::HilbertSpace& space);

// Residual of that defining equation, F a + a F - 2 f2 a - 2 <a> (f1 - f2);
// only the leading (dim-1) block is meaningful.
fock::OperatorMatrix forward_amplitude_residual(const fock::OperatorMatrix& fhat,
                                                const Complex& mean_a,
                                                const Complex& f1,
                                                const Complex& f2,
                                                const fock::HilbertSpace& space);

// Permittivity operator n2^2 + 2 <a> (n1^2 - n2^2) X, built from the stored
// squared indices. Identical to 1 + (4 pi rho / k^2) F up to rounding.
fock::OperatorMatrix permittivity_operator(const Complex& mean_a,
                                           const OpticalResponse& resp,
                                           const fock::HilbertSpace& space);

// Single-emitter polarizability operator
//   -(mu_sq_eff / (hbar vol (omega - omega2 + i gamma)))
//     * [ i a + delta_omega * mean_E0 / (omega - omega1 + i gamma) ],
// where mean_E0 is the mean of the bare input field i<a>. Equals
// (F E0 + E0 F) / (2 k^2) with E0 = i a, exactly on the leading block.
fock::OperatorMatrix polarizability_operator(double omega, const MediumParams& p,
                                             const Complex& mean_E0,
                                             const fock::HilbertSpace& space);

// ---------------------------------------------------------------------------
// Envelope densities and depolarization

// Piecewise-constant |envelope|^2 on a uniform cubic grid. Node (i, j, l)
// is centered at origin + spacing * (i, j, l); weights are normalized so the
// Riemann sum of |envelope|^2 equals one.
struct EnvelopeGrid {
  Eigen::Vector3d origin = Eigen::Vector3d::Zero();
  double spacing = 0.0;
  int nx = 0, ny = 0, nz = 0;
  std::vector<double> weight;

  // Staircase unit ball sampled on cells_per_axis^3 cells over [-1, 1]^3.
  static EnvelopeGrid ball(int cells_per_axis);
  // Staircase ellipsoid with semi-axes (ax, ay, az) on [-ax, ax] x ... grid.
  static EnvelopeGrid ellipsoid(int cells_per_axis, double ax, double ay,
                                double az);

  double w(int i, int j, int l) const {
    return weight[static_cast<std::size_t>((i * ny + j)) * nz + l];
  }
  double& w(int i, int j, int l) {
    return weight[static_cast<std::size_t>((i * ny + j)) * nz + l];
  }
  Eigen::Vector3d center(int i, int j, int l) const {
    return origin + spacing * Eigen::Vector3d(i, j, l);
  }
  std::size_t cells() const { return weight.size(); }

  double integral() const;          // sum w h^3       (= 1 once normalized)
  double quartic_integral() const;  // sum w^2 h^3     (integral of |env|^4)
  double support_volume() const;    // h^3 * #{w > 0}
  void normalize();
};

// Exact depolarization tensor of a uniform ball: identity / 3.
Eigen::Matrix3d depolarization_tensor_uniform_sphere();

struct QuadratureOptions {
  // Pairs closer than this are dropped; 0 means one grid spacing. Same-cell
  // pairs are always dropped.
  double exclusion_radius = 0.0;
  // Accepted bound on the self-consistency error estimate.
  double tolerance = 0.02;
};

struct DepolarizationResult {
  Eigen::Matrix3d tensor;
  double error_estimate;  // max component change when doubling the exclusion
};

// Deterministic cell-pair quadrature of the depolarization tensor
//   (V/3) I * integral(|env|^4)
//     - (V/4pi) E_pairs[(3 nn^T - 1) / d^3]  over the |env|^2 pair density.
// Throws AccuracyError when the error estimate exceeds opts.tolerance.
DepolarizationResult depolarization_tensor(const EnvelopeGrid& grid,
                                           double volume,
                                           const QuadratureOptions& opts = {});

// Frequency shift 4 pi / (hbar vol) * mu^T N mu produced by a depolarization
// tensor N.
double depolarization_shift(const Eigen::Vector3d& mu, double vol,
                            const Eigen::Matrix3d& N, double hbar);

}  // namespace excomp::medium
