#include "excomp/states.hpp"

#include <cmath>
#include <string>

namespace excomp::states {

namespace {

constexpr double kTailBudget = 1e-10;

fock::Vector coherent_amplitudes(const Complex& beta, int dim) {
  fock::Vector amps(dim);
  const double prefactor = std::exp(-0.5 * std::norm(beta));
  Complex term(1.0, 0.0);  // beta^n / sqrt(n!)
  for (int n = 0; n < dim; ++n) {
    if (n > 0) term *= beta / std::sqrt(static_cast<double>(n));
    amps(n) = prefactor * term;
  }
  return amps;
}

BuiltState pure_state(const fock::HilbertSpace& space, fock::Vector amps) {
  auto psi = fock::StateVector::from_amplitudes(space, std::move(amps));
  auto rho = fock::DensityMatrix::pure(psi);
  return BuiltState{std::move(rho), std::move(psi)};
}

}  // namespace

BuiltState build_state(const StateSpec& spec, const fock::HilbertSpace& space) {
  const int dim = space.dim();

  if (const auto* s = std::get_if<FockSpec>(&spec)) {
    if (s->n < 0 || s->n >= dim) {
      throw ValidationError("fock level " + std::to_string(s->n) +
                            " outside the truncated space of dim " +
                            std::to_string(dim));
    }
    fock::Vector amps = fock::Vector::Zero(dim);
    amps(s->n) = 1.0;
    return pure_state(space, std::move(amps));
  }

  if (const auto* s = std::get_if<CoherentSpec>(&spec)) {
    fock::Vector amps = coherent_amplitudes(s->beta, dim);
    const double captured = amps.squaredNorm();
    if (1.0 - captured > kTailBudget) {
      throw TruncationError(
          "coherent state loses " + std::to_string(1.0 - captured) +
              " of its population above the cutoff; enlarge dim",
          captured);
    }
    return pure_state(space, std::move(amps));
  }

  if (const auto* s = std::get_if<ThermalSpec>(&spec)) {
    if (s->nbar < 0.0) {
      throw ValidationError("thermal occupation must be non-negative");
    }
    const double q = s->nbar / (1.0 + s->nbar);
    const double tail = std::pow(q, dim);
    if (tail > kTailBudget) {
      throw TruncationError(
          "thermal state keeps " + std::to_string(tail) +
              " of its population above the cutoff; enlarge dim",
          1.0 - tail);
    }
    fock::Matrix rho = fock::Matrix::Zero(dim, dim);
    double w = 1.0 - q;
    double total = 0.0;
    for (int n = 0; n < dim; ++n) {
      rho(n, n) = w;
      total += w;
      w *= q;
    }
    rho /= total;
    return BuiltState{fock::DensityMatrix::from_matrix(space, std::move(rho)),
                      std::nullopt};
  }

  if (const auto* s = std::get_if<FockQubitSpec>(&spec)) {
    fock::Vector amps = fock::Vector::Zero(dim);
    amps(0) = s->beta0;
    amps(1) = s->beta1;
    return pure_state(space, std::move(amps));
  }

  const auto& custom = std::get<CustomSpec>(spec);
  if (custom.amps.has_value() == custom.rho.has_value()) {
    throw ValidationError(
        "custom state needs exactly one of amplitudes or density matrix");
  }
  if (custom.amps) {
    return pure_state(space, *custom.amps);
  }
  return BuiltState{fock::DensityMatrix::from_matrix(space, *custom.rho),
                    std::nullopt};
}

Complex mean_amplitude(const StateSpec& spec, const fock::HilbertSpace& space) {
  if (std::holds_alternative<FockSpec>(spec) ||
      std::holds_alternative<ThermalSpec>(spec)) {
    return Complex(0.0, 0.0);
  }
  if (const auto* s = std::get_if<CoherentSpec>(&spec)) return s->beta;
  if (const auto* s = std::get_if<FockQubitSpec>(&spec)) {
    return std::conj(s->beta0) * s->beta1;
  }
  const BuiltState built = build_state(spec, space);
  return fock::mean_annihilation(built.rho);
}

}  // namespace excomp::states
