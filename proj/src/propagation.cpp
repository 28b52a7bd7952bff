#include "excomp/propagation.hpp"

#include <cmath>
#include <exception>
#include <string>
#include <thread>
#include <utility>

namespace excomp::propagation {

namespace {

constexpr double kTraceDriftBudget = 1e-8;
constexpr double kMeanPhotonFloor = 1e-14;  // on the squared mean photon number
constexpr double kRatioImagTol = 1e-10;

const Complex kI(0.0, 1.0);

bool ratio_near_real(const Complex& ratio) {
  return std::abs(ratio.imag()) <= kRatioImagTol * (1.0 + std::abs(ratio));
}

TransformedState conjugate_with(const fock::Matrix& m,
                                const fock::DensityMatrix& rho) {
  fock::Matrix out = m.adjoint() * rho.elems() * m;
  const double trace = out.trace().real();
  const double drift = std::abs(trace - 1.0);
  if (drift > kTraceDriftBudget) {
    throw TruncationError(
        "displacement pushed " + std::to_string(drift) +
            " of the state past the cutoff; enlarge dim",
        trace);
  }
  out /= trace;
  return TransformedState{
      fock::DensityMatrix::from_matrix(rho.space(), std::move(out)), drift};
}

}  // namespace

// ---------------------------------------------------------------------------
// Field modes

FieldMode FieldMode::electric(double z, const OpticalResponse& resp) {
  FieldMode m;
  m.kind = FieldKind::electric;
  m.z = z;
  m.c_coh = kI * std::exp(kI * resp.n1 * resp.k * z) / std::sqrt(resp.n1);
  m.c_inc = kI * std::exp(kI * resp.n2 * resp.k * z) / std::sqrt(resp.n2);
  return m;
}

FieldMode FieldMode::magnetic(double z, const OpticalResponse& resp) {
  FieldMode m;
  m.kind = FieldKind::magnetic;
  m.z = z;
  m.c_coh = -kI * std::sqrt(resp.n1) * std::exp(kI * resp.n1 * resp.k * z);
  m.c_inc = -kI * std::sqrt(resp.n2) * std::exp(kI * resp.n2 * resp.k * z);
  return m;
}

fock::OperatorMatrix FieldMode::to_matrix(const Complex& mean_a,
                                          const fock::HilbertSpace& space) const {
  const auto a = fock::annihilation(space);
  const auto id = fock::OperatorMatrix::identity(space);
  return c_coh * mean_a * id + c_inc * (a - mean_a * id);
}

// ---------------------------------------------------------------------------
// State transformation

Complex displacement_factor(double z, const Complex& mean_a,
                            const OpticalResponse& resp) {
  const Complex ratio_root = std::sqrt(resp.n2 / resp.n1);
  return mean_a *
         (ratio_root * std::exp(kI * (resp.n1 - resp.n2) * resp.k * z) - 1.0);
}

TransformedState transform_density(const fock::DensityMatrix& rho,
                                   const Complex& kappa) {
  if (kappa == Complex(0.0, 0.0)) return TransformedState{rho, 0.0};
  const auto m = fock::displacement_closed(kappa, rho.space());
  return conjugate_with(m.elems(), rho);
}

TransformedState transform_density_exp(const fock::DensityMatrix& rho,
                                       const Complex& kappa) {
  if (kappa == Complex(0.0, 0.0)) return TransformedState{rho, 0.0};
  const auto m = fock::displacement_exp(kappa, rho.space());
  return conjugate_with(m.elems(), rho);
}

fock::StateVector fock_qubit_closed(const Complex& beta0, const Complex& beta1,
                                    const Complex& kappa,
                                    const fock::HilbertSpace& space) {
  const int dim = space.dim();
  fock::Vector amps(dim);
  const double pref = std::exp(-0.5 * std::norm(kappa));
  const Complex head = beta0 - beta1 * std::conj(kappa);
  Complex t(1.0, 0.0);       // kappa^n / sqrt(n!)
  Complex t_prev(0.0, 0.0);  // kappa^{n-1} / sqrt((n-1)!)
  for (int n = 0; n < dim; ++n) {
    if (n > 0) {
      t_prev = t;
      t *= kappa / std::sqrt(static_cast<double>(n));
      amps(n) = pref * (head * t +
                        beta1 * std::sqrt(static_cast<double>(n)) * t_prev);
    } else {
      amps(0) = pref * head;
    }
  }
  const double captured = amps.squaredNorm();
  if (std::abs(captured - 1.0) > 1e-6) {
    throw TruncationError(
        "displaced two-level state keeps only " + std::to_string(captured) +
            " of its norm below the cutoff; enlarge dim",
        captured);
  }
  return fock::StateVector::from_amplitudes(space, std::move(amps));
}

// ---------------------------------------------------------------------------
// Second-order coherence

std::optional<double> g2_closed_form_at_kappa(const fock::StateVector& psi,
                                              const Complex& kappa,
                                              const Complex& ratio,
                                              const Complex& mean_a) {
  const int dim = psi.dim();
  const fock::Vector& a = psi.amps();
  const auto amp = [&](int n) {
    return n < dim ? a(n) : Complex(0.0, 0.0);
  };

  const Complex kappa_sq = kappa * kappa;
  double numerator = 0.0;
  for (int m = 0; m < dim; ++m) {
    const double r1 = std::sqrt(m + 1.0);
    const double r2 = std::sqrt((m + 1.0) * (m + 2.0));
    const Complex term = kappa_sq * a(m) + 2.0 * kappa * r1 * amp(m + 1) +
                         r2 * amp(m + 2);
    numerator += std::norm(term);
  }

  double mean_n = 0.0;
  for (int n = 0; n < dim; ++n) mean_n += n * std::norm(a(n));
  const double displaced_mean_n =
      mean_n + (ratio.real() - 1.0) * std::norm(mean_a);
  const double denom = displaced_mean_n * displaced_mean_n;
  if (denom <= kMeanPhotonFloor) return std::nullopt;
  return numerator / denom;
}

std::optional<double> g2_closed_form(const fock::StateVector& psi, double z,
                                     const OpticalResponse& resp,
                                     const Complex& mean_a) {
  const Complex ratio = resp.n2 / resp.n1;
  if (!ratio_near_real(ratio)) {
    throw ValidationError(
        "closed-form g2 needs a near-real index ratio; "
        "use the moment route for lossy media");
  }
  const Complex kappa = displacement_factor(z, mean_a, resp);
  return g2_closed_form_at_kappa(psi, kappa, ratio, mean_a);
}

std::optional<double> g2_from_moments(const fock::DensityMatrix& rho, double z,
                                      const OpticalResponse& resp,
                                      const Complex& mean_a) {
  const Complex kappa = displacement_factor(z, mean_a, resp);
  const auto alpha = fock::annihilation(rho.space()) +
                     kappa * fock::OperatorMatrix::identity(rho.space());
  const auto alpha_sq = alpha * alpha;
  const double numerator =
      fock::expectation(rho, alpha_sq.adjoint() * alpha_sq).real();
  const double mean_n =
      fock::expectation(rho, alpha.adjoint() * alpha).real();
  const double denom = mean_n * mean_n;
  if (denom <= kMeanPhotonFloor) return std::nullopt;
  return numerator / denom;
}

// ---------------------------------------------------------------------------
// Flux and field equation

double poynting_flux(const fock::DensityMatrix& rho, double z,
                     const OpticalResponse& resp) {
  const Complex mean_a = fock::mean_annihilation(rho);
  const auto e = FieldMode::electric(z, resp).to_matrix(mean_a, rho.space());
  const auto h = FieldMode::magnetic(z, resp).to_matrix(mean_a, rho.space());
  return -fock::expectation(rho, e.adjoint() * h).real();
}

double wave_equation_residual(const OpticalResponse& resp, double z, double h) {
  if (!(h > 0.0)) throw ValidationError("stencil width must be positive");
  double worst = 0.0;
  for (const Complex& n : {resp.n1, resp.n2}) {
    const Complex ikn = kI * n * resp.k;
    const auto u = [&](double x) { return std::exp(ikn * x); };
    const Complex second = (-u(z + 2.0 * h) + 16.0 * u(z + h) - 30.0 * u(z) +
                            16.0 * u(z - h) - u(z - 2.0 * h)) /
                           (12.0 * h * h);
    const Complex target = resp.k * resp.k * n * n * u(z);
    worst = std::max(worst, std::abs(second + target) / std::abs(target));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Scans

std::vector<PropagationPoint> propagate_scan(const states::BuiltState& state,
                                             const OpticalResponse& resp,
                                             const std::vector<double>& z_values,
                                             int threads) {
  if (resp.forbidden) {
    throw ForbiddenZoneError(
        "propagation requested inside an evanescent zone at omega = " +
        std::to_string(resp.omega));
  }
  const Complex mean_a = fock::mean_annihilation(state.rho);
  const Complex ratio = resp.n2 / resp.n1;
  const bool closed_route = state.psi.has_value() && ratio_near_real(ratio);

  std::vector<PropagationPoint> out(z_values.size());
  const auto eval_point = [&](std::size_t idx) {
    const double z = z_values[idx];
    PropagationPoint& pt = out[idx];
    pt.z = z;
    pt.kappa = displacement_factor(z, mean_a, resp);
    const TransformedState moved = transform_density(state.rho, pt.kappa);
    pt.trace_drift = moved.trace_drift;
    pt.g2 = closed_route ? g2_closed_form(*state.psi, z, resp, mean_a)
                         : g2_from_moments(state.rho, z, resp, mean_a);
    pt.flux = poynting_flux(state.rho, z, resp);
  };

  const std::size_t npts = z_values.size();
  const std::size_t nworkers = std::min<std::size_t>(
      npts, static_cast<std::size_t>(std::max(1, threads)));
  if (nworkers <= 1) {
    for (std::size_t i = 0; i < npts; ++i) eval_point(i);
    return out;
  }

  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(nworkers);
  for (std::size_t w = 0; w < nworkers; ++w) {
    pool.emplace_back([&, w]() {
      try {
        for (std::size_t i = w; i < npts; i += nworkers) eval_point(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return out;
}

}  // namespace excomp::propagation
