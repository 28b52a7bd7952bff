#include "excomp/reference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace excomp::reference {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Uniform double in [0, 1) from the top 53 bits of a mt19937_64 draw; avoids
// std::uniform_real_distribution, whose output is not pinned by the standard.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// One standard complex Gaussian via a hand-rolled Box-Muller transform.
Complex complex_gaussian(std::mt19937_64& rng) {
  double u1 = uniform01(rng);
  while (u1 == 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  const double r = std::sqrt(-2.0 * std::log(u1));
  return Complex(r * std::cos(2.0 * kPi * u2), r * std::sin(2.0 * kPi * u2));
}

}  // namespace

// ---------------------------------------------------------------------------
// Special-function oracle

double laguerre_series(int p, int alpha, double x, double* condition_scale) {
  if (p < 0) throw ValidationError("laguerre_series: degree must be non-negative");
  if (alpha < 0) {
    throw ValidationError("laguerre_series: order must be non-negative");
  }
  long double sum = 0.0L;
  long double abs_sum = 0.0L;
  // term_i = (-1)^i C(p + alpha, p - i) x^i / i!
  for (int i = 0; i <= p; ++i) {
    long double binom = 1.0L;
    for (int j = 1; j <= p - i; ++j) {
      binom *= static_cast<long double>(alpha + i + j) / j;
    }
    long double pow_term = 1.0L;
    for (int j = 1; j <= i; ++j) {
      pow_term *= static_cast<long double>(x) / j;
    }
    const long double term = (i % 2 == 0 ? 1.0L : -1.0L) * binom * pow_term;
    sum += term;
    abs_sum += binom * pow_term;
  }
  if (condition_scale != nullptr) {
    *condition_scale = static_cast<double>(abs_sum);
  }
  return static_cast<double>(sum);
}

// ---------------------------------------------------------------------------
// Seeded random states

fock::StateVector random_pure_state(std::uint64_t seed,
                                    const fock::HilbertSpace& space) {
  std::mt19937_64 rng(seed);
  fock::Vector amps(space.dim());
  for (int n = 0; n < space.dim(); ++n) amps(n) = complex_gaussian(rng);
  amps /= amps.norm();
  return fock::StateVector::from_amplitudes(space, std::move(amps));
}

fock::DensityMatrix random_density_matrix(std::uint64_t seed,
                                          const fock::HilbertSpace& space,
                                          int rank) {
  if (rank < 1 || rank > space.dim()) {
    throw ValidationError("random_density_matrix: rank must lie in [1, dim]");
  }
  std::mt19937_64 rng(seed);
  std::vector<double> weights(rank);
  double total = 0.0;
  for (double& w : weights) {
    w = uniform01(rng) + 1e-3;  // keep every component visible
    total += w;
  }
  fock::Matrix rho = fock::Matrix::Zero(space.dim(), space.dim());
  for (int k = 0; k < rank; ++k) {
    const std::uint64_t sub_seed =
        seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(k + 1));
    const fock::StateVector psi = random_pure_state(sub_seed, space);
    rho += (weights[k] / total) * (psi.amps() * psi.amps().adjoint());
  }
  return fock::DensityMatrix::from_matrix(space, std::move(rho));
}

// ---------------------------------------------------------------------------
// Literal moments

Complex normally_ordered_moment(const fock::DensityMatrix& rho,
                                const fock::OperatorMatrix& alpha_op, int j,
                                int l) {
  if (j < 0 || l < 0) {
    throw ValidationError("moment orders must be non-negative");
  }
  const int top = rho.dim() - 1;
  const double top_pop = rho.elems()(top, top).real();
  if (top_pop > 1e-10) {
    throw TruncationError("top-level population " + std::to_string(top_pop) +
                              " too large for a trustworthy moment",
                          1.0 - top_pop);
  }
  fock::OperatorMatrix m = fock::OperatorMatrix::identity(rho.space());
  const fock::OperatorMatrix dag = alpha_op.adjoint();
  for (int i = 0; i < j; ++i) m = m * dag;
  for (int i = 0; i < l; ++i) m = m * alpha_op;
  return fock::expectation(rho, m);
}

// ---------------------------------------------------------------------------
// Monte Carlo depolarization

McEstimate mc_depolarization(const medium::EnvelopeGrid& grid, double volume,
                             std::uint64_t samples, std::uint64_t seed,
                             double exclusion_radius) {
  if (samples == 0) throw ValidationError("mc_depolarization: samples == 0");
  if (!(volume > 0.0)) throw ValidationError("volume must be positive");
  const double h = grid.spacing;
  const double eps = exclusion_radius > 0.0 ? exclusion_radius : h;
  const double eps_sq = eps * eps;
  const double h3 = h * h * h;

  struct Cell {
    Eigen::Vector3d r;
    double mass;
  };
  std::vector<Cell> cells;
  for (int i = 0; i < grid.nx; ++i) {
    for (int j = 0; j < grid.ny; ++j) {
      for (int l = 0; l < grid.nz; ++l) {
        const double w = grid.w(i, j, l);
        if (w > 0.0) cells.push_back({grid.center(i, j, l), w * h3});
      }
    }
  }
  const std::size_t ncells = cells.size();

  // Stratified first-point allocation: floor(samples * mass) per cell, the
  // remainder going to the largest fractional parts (ties by cell order).
  std::vector<std::uint64_t> alloc(ncells);
  std::vector<std::pair<double, std::size_t>> fractional(ncells);
  std::uint64_t assigned = 0;
  for (std::size_t c = 0; c < ncells; ++c) {
    const double ideal = static_cast<double>(samples) * cells[c].mass;
    alloc[c] = static_cast<std::uint64_t>(std::floor(ideal));
    fractional[c] = {ideal - std::floor(ideal), c};
    assigned += alloc[c];
  }
  std::stable_sort(fractional.begin(), fractional.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t c = 0; assigned < samples && c < ncells; ++c) {
    ++alloc[fractional[c].second];
    ++assigned;
  }
  // Mass rounding can leave a few samples unassigned; give them to cell 0.
  if (assigned < samples) alloc[0] += samples - assigned;

  std::vector<double> cdf(ncells);
  double running = 0.0;
  for (std::size_t c = 0; c < ncells; ++c) {
    running += cells[c].mass;
    cdf[c] = running;
  }
  cdf.back() = 1.0;

  std::mt19937_64 rng(seed);
  auto jitter = [&](const Eigen::Vector3d& center) {
    return Eigen::Vector3d(center.x() + h * (uniform01(rng) - 0.5),
                           center.y() + h * (uniform01(rng) - 0.5),
                           center.z() + h * (uniform01(rng) - 0.5));
  };

  Eigen::Matrix3d sum = Eigen::Matrix3d::Zero();
  Eigen::Matrix3d sum_sq = Eigen::Matrix3d::Zero();
  double trace_sum = 0.0;
  double trace_sum_sq = 0.0;

  for (std::size_t c = 0; c < ncells; ++c) {
    for (std::uint64_t s = 0; s < alloc[c]; ++s) {
      const Eigen::Vector3d p1 = jitter(cells[c].r);
      const double u = uniform01(rng);
      const std::size_t pick =
          std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
      const Eigen::Vector3d p2 = jitter(cells[std::min(pick, ncells - 1)].r);

      Eigen::Matrix3d kernel = Eigen::Matrix3d::Zero();
      const Eigen::Vector3d d = p1 - p2;
      const double dist_sq = d.squaredNorm();
      if (dist_sq >= eps_sq) {
        const double dist = std::sqrt(dist_sq);
        kernel = (3.0 / (dist_sq * dist_sq * dist)) * (d * d.transpose());
        kernel.diagonal().array() -= 1.0 / (dist_sq * dist);
      }
      sum += kernel;
      sum_sq += kernel.cwiseProduct(kernel);
      const double tr = kernel.trace();
      trace_sum += tr;
      trace_sum_sq += tr * tr;
    }
  }

  const double n = static_cast<double>(samples);
  const Eigen::Matrix3d mean = sum / n;
  // Plain i.i.d. variance estimate; stratification only lowers the true one.
  Eigen::Matrix3d var = (sum_sq / n - mean.cwiseProduct(mean)) / n;
  var = var.cwiseMax(0.0);

  const double lead = volume / 3.0 * grid.quartic_integral();
  const double scale = volume / (4.0 * kPi);
  McEstimate out;
  out.tensor = lead * Eigen::Matrix3d::Identity() - scale * mean;
  out.stderr_ = scale * var.cwiseSqrt();
  const double trace_mean = trace_sum / n;
  const double trace_var =
      std::max(0.0, (trace_sum_sq / n - trace_mean * trace_mean) / n);
  out.trace = 3.0 * lead - scale * trace_mean;
  out.trace_stderr = scale * std::sqrt(trace_var);
  out.samples = samples;
  return out;
}

// ---------------------------------------------------------------------------
// Two-mode helpers

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Eigen::MatrixXcd two_mode_lowering_fwd(const fock::HilbertSpace& space) {
  const Eigen::MatrixXcd a = fock::annihilation(space).elems();
  const Eigen::MatrixXcd id =
      Eigen::MatrixXcd::Identity(space.dim(), space.dim());
  return kron(a, id);
}

Eigen::MatrixXcd two_mode_lowering_bwd(const fock::HilbertSpace& space) {
  const Eigen::MatrixXcd a = fock::annihilation(space).elems();
  const Eigen::MatrixXcd id =
      Eigen::MatrixXcd::Identity(space.dim(), space.dim());
  return kron(id, a);
}

}  // namespace excomp::reference
