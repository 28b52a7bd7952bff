#include "excomp/medium.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace excomp::medium {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHbarCgs = 1.054571817e-27;  // erg s
constexpr double kLightCgs = 2.99792458e10;   // cm / s

}  // namespace

// ---------------------------------------------------------------------------
// Parameters

double MediumParams::hbar() const {
  return units == Units::gaussian ? kHbarCgs : 1.0;
}

double MediumParams::c() const {
  return units == Units::gaussian ? kLightCgs : 1.0;
}

double MediumParams::coupling() const {
  return 4.0 * kPi * rho * (mu_sq / eps_host) / (hbar() * vol);
}

void MediumParams::validate() const {
  if (!(omega0 > 0.0)) throw ValidationError("omega0 must be positive");
  if (!(vol > 0.0)) throw ValidationError("vol must be positive");
  if (!(eps_host > 0.0)) throw ValidationError("eps_host must be positive");
  if (rho < 0.0) throw ValidationError("rho must be non-negative");
  if (mu_sq < 0.0) throw ValidationError("mu_sq must be non-negative");
  if (gamma < 0.0) throw ValidationError("gamma must be non-negative");
  if (!std::isfinite(omega0) || !std::isfinite(delta_omega) ||
      !std::isfinite(mu_sq) || !std::isfinite(vol) || !std::isfinite(rho) ||
      !std::isfinite(gamma) || !std::isfinite(eps_host)) {
    throw ValidationError("medium parameters must be finite");
  }
}

// ---------------------------------------------------------------------------
// Frequency-domain response

PartialAmplitudes partial_amplitudes(double omega, const MediumParams& p) {
  p.validate();
  if (!(omega > 0.0)) throw ValidationError("omega must be positive");
  if (p.gamma == 0.0 && (omega == p.omega1() || omega == p.omega2())) {
    throw PoleError("lossless drive exactly on resonance at omega = " +
                    std::to_string(omega));
  }
  const double k = omega * std::sqrt(p.eps_host) / p.c();
  const double strength = k * k * (p.mu_sq / p.eps_host) / (p.hbar() * p.vol);
  const Complex ig(0.0, p.gamma);
  PartialAmplitudes out;
  out.f1 = -strength / (omega - p.omega1() + ig);
  out.f2 = -strength / (omega - p.omega2() + ig);
  return out;
}

namespace {

// Keep the imaginary part of a lossless n^2 at +0 so the principal square
// root lands on the +i branch for negative reals.
Complex scrub_imag_zero(Complex z) {
  if (z.imag() == 0.0) return Complex(z.real(), 0.0);
  return z;
}

}  // namespace

OpticalResponse refractive_indices(double omega, const MediumParams& p) {
  const PartialAmplitudes f = partial_amplitudes(omega, p);
  OpticalResponse resp;
  resp.omega = omega;
  resp.k = omega * std::sqrt(p.eps_host) / p.c();
  resp.f1 = f.f1;
  resp.f2 = f.f2;
  const double k_sq = resp.k * resp.k;
  resp.n_sq1 = scrub_imag_zero(1.0 + 4.0 * kPi * p.rho * f.f1 / k_sq);
  resp.n_sq2 = scrub_imag_zero(1.0 + 4.0 * kPi * p.rho * f.f2 / k_sq);
  resp.n1 = std::sqrt(resp.n_sq1);
  resp.n2 = std::sqrt(resp.n_sq2);
  resp.forbidden = p.gamma == 0.0 &&
                   (resp.n_sq1.real() <= 0.0 || resp.n_sq2.real() <= 0.0);
  const double split = std::abs(resp.n1 - resp.n2) * resp.k;
  resp.beat_length = split > 0.0 ? 2.0 * kPi / split
                                 : std::numeric_limits<double>::infinity();
  return resp;
}

// ---------------------------------------------------------------------------
// Operator-valued response

fock::OperatorMatrix forward_amplitude_operator(const Complex& mean_a,
                                                const OpticalResponse& resp,
                                                const fock::HilbertSpace& space) {
  return 2.0 * mean_a * (resp.f1 - resp.f2) * fock::xi_operator(space) +
         resp.f2 * fock::OperatorMatrix::identity(space);
}

fock::OperatorMatrix forward_amplitude_residual(const fock::OperatorMatrix& fhat,
                                                const Complex& mean_a,
                                                const Complex& f1,
                                                const Complex& f2,
                                                const fock::HilbertSpace& space) {
  const auto a = fock::annihilation(space);
  return fhat * a + a * fhat - 2.0 * f2 * a -
         2.0 * mean_a * (f1 - f2) * fock::OperatorMatrix::identity(space);
}

fock::OperatorMatrix permittivity_operator(const Complex& mean_a,
                                           const OpticalResponse& resp,
                                           const fock::HilbertSpace& space) {
  return 2.0 * mean_a * (resp.n_sq1 - resp.n_sq2) * fock::xi_operator(space) +
         resp.n_sq2 * fock::OperatorMatrix::identity(space);
}

fock::OperatorMatrix polarizability_operator(double omega, const MediumParams& p,
                                             const Complex& mean_E0,
                                             const fock::HilbertSpace& space) {
  p.validate();
  if (p.gamma == 0.0 && (omega == p.omega1() || omega == p.omega2())) {
    throw PoleError("lossless drive exactly on resonance at omega = " +
                    std::to_string(omega));
  }
  const Complex ig(0.0, p.gamma);
  const Complex prefactor =
      -(p.mu_sq / p.eps_host) / (p.hbar() * p.vol * (omega - p.omega2() + ig));
  const Complex i(0.0, 1.0);
  const Complex drive = p.delta_omega * mean_E0 / (omega - p.omega1() + ig);
  return prefactor * (i * fock::annihilation(space) +
                      drive * fock::OperatorMatrix::identity(space));
}

// ---------------------------------------------------------------------------
// Envelope grids

EnvelopeGrid EnvelopeGrid::ball(int cells_per_axis) {
  if (cells_per_axis < 2) {
    throw ValidationError("envelope grid needs at least 2 cells per axis");
  }
  EnvelopeGrid g;
  g.nx = g.ny = g.nz = cells_per_axis;
  g.spacing = 2.0 / cells_per_axis;
  g.origin = Eigen::Vector3d::Constant(-1.0 + 0.5 * g.spacing);
  g.weight.assign(static_cast<std::size_t>(cells_per_axis) * cells_per_axis *
                      cells_per_axis,
                  0.0);
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      for (int l = 0; l < g.nz; ++l) {
        if (g.center(i, j, l).norm() <= 1.0) g.w(i, j, l) = 1.0;
      }
    }
  }
  g.normalize();
  return g;
}

EnvelopeGrid EnvelopeGrid::ellipsoid(int cells_per_axis, double ax, double ay,
                                     double az) {
  if (cells_per_axis < 2) {
    throw ValidationError("envelope grid needs at least 2 cells per axis");
  }
  if (!(ax > 0.0) || !(ay > 0.0) || !(az > 0.0)) {
    throw ValidationError("ellipsoid semi-axes must be positive");
  }
  const double amax = std::max(ax, std::max(ay, az));
  EnvelopeGrid g;
  g.nx = g.ny = g.nz = cells_per_axis;
  g.spacing = 2.0 * amax / cells_per_axis;
  g.origin = Eigen::Vector3d::Constant(-amax + 0.5 * g.spacing);
  g.weight.assign(static_cast<std::size_t>(cells_per_axis) * cells_per_axis *
                      cells_per_axis,
                  0.0);
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      for (int l = 0; l < g.nz; ++l) {
        const Eigen::Vector3d r = g.center(i, j, l);
        const double s = (r.x() / ax) * (r.x() / ax) +
                         (r.y() / ay) * (r.y() / ay) +
                         (r.z() / az) * (r.z() / az);
        if (s <= 1.0) g.w(i, j, l) = 1.0;
      }
    }
  }
  g.normalize();
  return g;
}

double EnvelopeGrid::integral() const {
  double s = 0.0;
  for (double v : weight) s += v;
  return s * spacing * spacing * spacing;
}

double EnvelopeGrid::quartic_integral() const {
  double s = 0.0;
  for (double v : weight) s += v * v;
  return s * spacing * spacing * spacing;
}

double EnvelopeGrid::support_volume() const {
  std::size_t count = 0;
  for (double v : weight) count += v > 0.0 ? 1 : 0;
  return static_cast<double>(count) * spacing * spacing * spacing;
}

void EnvelopeGrid::normalize() {
  const double total = integral();
  if (!(total > 0.0)) {
    throw ValidationError("envelope grid has empty support");
  }
  for (double& v : weight) v /= total;
}

// ---------------------------------------------------------------------------
// Depolarization

Eigen::Matrix3d depolarization_tensor_uniform_sphere() {
  return Eigen::Matrix3d::Identity() / 3.0;
}

DepolarizationResult depolarization_tensor(const EnvelopeGrid& grid,
                                           double volume,
                                           const QuadratureOptions& opts) {
  if (!(volume > 0.0)) throw ValidationError("volume must be positive");
  const double h = grid.spacing;
  const double eps =
      opts.exclusion_radius > 0.0 ? opts.exclusion_radius : h;

  struct Cell {
    Eigen::Vector3d r;
    double mass;  // w * h^3
  };
  std::vector<Cell> cells;
  const double h3 = h * h * h;
  for (int i = 0; i < grid.nx; ++i) {
    for (int j = 0; j < grid.ny; ++j) {
      for (int l = 0; l < grid.nz; ++l) {
        const double w = grid.w(i, j, l);
        if (w > 0.0) cells.push_back({grid.center(i, j, l), w * h3});
      }
    }
  }

  Eigen::Matrix3d pair_sum = Eigen::Matrix3d::Zero();       // cut at eps
  Eigen::Matrix3d pair_sum_wide = Eigen::Matrix3d::Zero();  // cut at 2 eps
  const double eps_sq = eps * eps;
  const double wide_sq = 4.0 * eps_sq;
  for (std::size_t a = 0; a < cells.size(); ++a) {
    for (std::size_t b = a + 1; b < cells.size(); ++b) {
      const Eigen::Vector3d d = cells[a].r - cells[b].r;
      const double dist_sq = d.squaredNorm();
      if (dist_sq < eps_sq) continue;
      const double dist = std::sqrt(dist_sq);
      const double inv3 = 1.0 / (dist_sq * dist);
      Eigen::Matrix3d kernel =
          (3.0 / (dist_sq * dist_sq * dist)) * (d * d.transpose());
      kernel.diagonal().array() -= inv3;
      // Unordered pair counted twice in the symmetric double integral.
      kernel *= 2.0 * cells[a].mass * cells[b].mass;
      pair_sum += kernel;
      if (dist_sq >= wide_sq) pair_sum_wide += kernel;
    }
  }

  const double lead = volume / 3.0 * grid.quartic_integral();
  const double scale = volume / (4.0 * kPi);
  Eigen::Matrix3d tensor =
      lead * Eigen::Matrix3d::Identity() - scale * pair_sum;
  Eigen::Matrix3d tensor_wide =
      lead * Eigen::Matrix3d::Identity() - scale * pair_sum_wide;
  const double err = (tensor - tensor_wide).cwiseAbs().maxCoeff();
  if (err > opts.tolerance) {
    throw AccuracyError(
        "depolarization quadrature self-consistency error " +
        std::to_string(err) + " exceeds tolerance " +
        std::to_string(opts.tolerance) + "; refine the grid");
  }
  return DepolarizationResult{tensor, err};
}

double depolarization_shift(const Eigen::Vector3d& mu, double vol,
                            const Eigen::Matrix3d& N, double hbar) {
  if (!(vol > 0.0)) throw ValidationError("vol must be positive");
  if (!(hbar > 0.0)) throw ValidationError("hbar must be positive");
  return 4.0 * kPi / (hbar * vol) * mu.dot(N * mu);
}

}  // namespace excomp::medium
