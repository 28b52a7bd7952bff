#pragma once

// Propagation of quantum light through the composite: two-index field modes,
// the statistics-induced displacement of the state, closed-form and
// moment-based second-order coherence, energy flux, and multi-threaded
// z-scans.

#include <optional>
#include <vector>

#include "excomp/fock.hpp"
#include "excomp/medium.hpp"
#include "excomp/states.hpp"

namespace excomp::propagation {

using fock::Complex;
using medium::OpticalResponse;

// ---------------------------------------------------------------------------
// Field modes

enum class FieldKind { electric, magnetic };

// Positive-frequency part of a field operator inside the composite. The mean
// amplitude rides the index-n1 channel while fluctuations ride index n2:
//   E(z) =  i [ e^{i k n1 z}/sqrt(n1) <a>  +  e^{i k n2 z}/sqrt(n2) (a - <a>) ]
//   H(z) = -i [ sqrt(n1) e^{i k n1 z} <a>  +  sqrt(n2) e^{i k n2 z} (a - <a>) ]
struct FieldMode {
  FieldKind kind;
  double z = 0.0;
  Complex c_coh;  // coefficient of the mean amplitude (prefactor included)
  Complex c_inc;  // coefficient of the fluctuation operator

  static FieldMode electric(double z, const OpticalResponse& resp);
  static FieldMode magnetic(double z, const OpticalResponse& resp);

  Complex mean(const Complex& mean_a) const { return c_coh * mean_a; }
  fock::OperatorMatrix to_matrix(const Complex& mean_a,
                                 const fock::HilbertSpace& space) const;
};

// ---------------------------------------------------------------------------
// State transformation along z

// Displacement accumulated by the state after a distance z:
//   kappa(z) = <a> ( sqrt(n2/n1) e^{i (n1 - n2) k z} - 1 ).
Complex displacement_factor(double z, const Complex& mean_a,
                            const OpticalResponse& resp);

// Conjugates the density matrix with the displacement of argument kappa
// (closed-form matrix): rho' = M^dag rho M with M the matrix of
// displacement_closed(kappa). A trace drift above 1e-8 throws
// TruncationError; smaller drifts are renormalized away. Returns the
// transformed matrix together with the raw drift |tr - 1|.
struct TransformedState {
  fock::DensityMatrix rho;
  double trace_drift = 0.0;
};
TransformedState transform_density(const fock::DensityMatrix& rho,
                                   const Complex& kappa);

// Same conjugation through the matrix-exponential displacement; cross-check.
TransformedState transform_density_exp(const fock::DensityMatrix& rho,
                                       const Complex& kappa);

// Closed-form amplitudes of a displaced two-level superposition:
//   A_n = e^{-|kappa|^2/2} [ (beta0 - beta1 conj(kappa)) kappa^n / sqrt(n!)
//                            + beta1 sqrt(n) kappa^{n-1} / sqrt((n-1)!) ].
// Throws TruncationError when the cutoff loses more than 1e-6 of the norm.
fock::StateVector fock_qubit_closed(const Complex& beta0, const Complex& beta1,
                                    const Complex& kappa,
                                    const fock::HilbertSpace& space);

// ---------------------------------------------------------------------------
// Observables

// Second-order coherence of a pure state propagated to z, evaluated from the
// number-basis amplitudes and the displacement factor without forming the
// transformed density matrix. Requires a near-real index ratio n2/n1; returns
// nullopt when the squared mean photon number underflows 1e-14.
std::optional<double> g2_closed_form(const fock::StateVector& psi, double z,
                                     const OpticalResponse& resp,
                                     const Complex& mean_a);

// Inner closed form at an explicit displacement and index ratio; the ratio
// enters only through the mean photon number of the displaced state.
std::optional<double> g2_closed_form_at_kappa(const fock::StateVector& psi,
                                              const Complex& kappa,
                                              const Complex& ratio,
                                              const Complex& mean_a);

// Second-order coherence from normally ordered moments of the displaced
// lowering operator alpha = a + kappa(z); works for mixed states and complex
// indices.
std::optional<double> g2_from_moments(const fock::DensityMatrix& rho, double z,
                                      const OpticalResponse& resp,
                                      const Complex& mean_a);

// Energy flux -Re tr(rho E^dag H) at depth z; z-independent for real indices.
double poynting_flux(const fock::DensityMatrix& rho, double z,
                     const OpticalResponse& resp);

// Largest relative residual of u'' + k^2 n^2 u = 0 over the two channels
// (mean rides n1, fluctuations ride n2), using a fourth-order central stencil
// of half-width 2h.
double wave_equation_residual(const OpticalResponse& resp, double z, double h);

// ---------------------------------------------------------------------------
// Scans

struct PropagationPoint {
  double z = 0.0;
  Complex kappa;
  std::optional<double> g2;
  double flux = 0.0;
  double trace_drift = 0.0;
};

// Evaluates kappa, g2, flux, and the transform trace drift at each z. The
// mean amplitude is the literal mean of the built state, so the closed-form
// and moment routes agree identically for pure states. Rows are computed
// independently and written to preallocated slots: output is byte-identical
// for any thread count. Throws ForbiddenZoneError inside an evanescent zone.
std::vector<PropagationPoint> propagate_scan(const states::BuiltState& state,
                                             const OpticalResponse& resp,
                                             const std::vector<double>& z_values,
                                             int threads);

}  // namespace excomp::propagation
