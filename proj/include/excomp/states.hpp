#pragma once

// State preparation in a truncated number basis: Fock, coherent, thermal,
// two-level superpositions, and raw user-supplied payloads, plus closed-form
// means of the lowering operator for the untruncated counterparts.

#include <optional>
#include <variant>

#include "excomp/fock.hpp"

namespace excomp::states {

using fock::Complex;

struct FockSpec {
  int n = 0;
};

struct CoherentSpec {
  Complex beta;
};

struct ThermalSpec {
  double nbar = 0.0;
};

// Normalized superposition beta0|0> + beta1|1>.
struct FockQubitSpec {
  Complex beta0;
  Complex beta1;
};

// Raw payload: exactly one of the two fields must be set.
struct CustomSpec {
  std::optional<fock::Vector> amps;
  std::optional<fock::Matrix> rho;
};

using StateSpec =
    std::variant<FockSpec, CoherentSpec, ThermalSpec, FockQubitSpec, CustomSpec>;

struct BuiltState {
  fock::DensityMatrix rho;
  std::optional<fock::StateVector> psi;  // present when the spec is pure
};

// Builds the requested state inside the truncated space. Coherent states must
// capture at least 1 - 1e-10 of their population below the cutoff and thermal
// states need (nbar/(1+nbar))^dim <= 1e-10; otherwise a TruncationError
// carrying the captured population is thrown. Captured states are
// renormalized.
BuiltState build_state(const StateSpec& spec, const fock::HilbertSpace& space);

// Mean of the lowering operator for the untruncated state: exactly 0 for
// number and thermal states, beta for coherent ones, conj(beta0)*beta1 for the
// two-level superposition. Custom payloads fall back to the literal truncated
// sum.
Complex mean_amplitude(const StateSpec& spec, const fock::HilbertSpace& space);

}  // namespace excomp::states
