#include "excomp/fock.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace excomp::fock {

namespace {

constexpr double kNormWindow = 1e-6;
constexpr double kHermitianTol = 1e-12;
constexpr double kEigenFloor = -1e-10;

}  // namespace

// ---------------------------------------------------------------------------
// Spaces and states

HilbertSpace::HilbertSpace(int dim) : dim_(dim) {
  if (dim < 2) {
    throw ValidationError("HilbertSpace needs at least 2 levels, got " +
                          std::to_string(dim));
  }
}

int guard_levels(double kappa_abs) {
  const int pushed = static_cast<int>(std::ceil(4.0 * kappa_abs * kappa_abs));
  return std::max(10, pushed);
}

int certified_levels(const HilbertSpace& space, double kappa_abs) {
  const int pushed = static_cast<int>(std::ceil(4.0 * kappa_abs * kappa_abs));
  return std::max(0, space.dim() - pushed - 10);
}

StateVector StateVector::from_amplitudes(const HilbertSpace& space, Vector amps) {
  if (amps.size() != space.dim()) {
    throw ValidationError("amplitude vector has length " +
                          std::to_string(amps.size()) + ", space has dim " +
                          std::to_string(space.dim()));
  }
  const double norm = amps.norm();
  if (std::abs(norm - 1.0) > kNormWindow) {
    throw ValidationError("state norm " + std::to_string(norm) +
                          " deviates from 1 by more than 1e-6");
  }
  amps /= norm;
  return StateVector(space, std::move(amps));
}

DensityMatrix DensityMatrix::from_matrix(const HilbertSpace& space, Matrix rho) {
  const int d = space.dim();
  if (rho.rows() != d || rho.cols() != d) {
    throw ValidationError("density matrix shape does not match space dim " +
                          std::to_string(d));
  }
  const double scale = std::max(1.0, rho.cwiseAbs().maxCoeff());
  const double herm_dev = (rho - rho.adjoint().eval()).cwiseAbs().maxCoeff();
  if (herm_dev > kHermitianTol * scale) {
    throw ValidationError("density matrix is not Hermitian (deviation " +
                          std::to_string(herm_dev) + ")");
  }
  rho = 0.5 * (rho + rho.adjoint().eval());

  const Complex tr = rho.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kNormWindow) {
    throw ValidationError("density matrix trace deviates from 1 by more than 1e-6");
  }
  rho /= tr.real();

  Eigen::SelfAdjointEigenSolver<Matrix> eig(rho, Eigen::EigenvaluesOnly);
  const double min_eig = eig.eigenvalues().minCoeff();
  if (min_eig < kEigenFloor) {
    throw ValidationError("density matrix has eigenvalue " +
                          std::to_string(min_eig) + " below the -1e-10 floor");
  }
  return DensityMatrix(space, std::move(rho));
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  Matrix rho = psi.amps() * psi.amps().adjoint();
  return DensityMatrix(psi.space(), std::move(rho));
}

double DensityMatrix::purity() const {
  return (rho_.cwiseProduct(rho_.transpose())).sum().real();
}

// ---------------------------------------------------------------------------
// Operator wrapper

OperatorMatrix::OperatorMatrix(const HilbertSpace& space, Matrix m)
    : space_(space), m_(std::move(m)) {
  if (m_.rows() != space.dim() || m_.cols() != space.dim()) {
    throw ValidationError("operator shape does not match space dim " +
                          std::to_string(space.dim()));
  }
}

OperatorMatrix OperatorMatrix::identity(const HilbertSpace& space) {
  return OperatorMatrix(space, Matrix::Identity(space.dim(), space.dim()));
}

OperatorMatrix OperatorMatrix::adjoint() const {
  return OperatorMatrix(space_, m_.adjoint());
}

double OperatorMatrix::max_abs() const { return m_.cwiseAbs().maxCoeff(); }

namespace {
void check_same_space(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.space() != b.space()) {
    throw ValidationError("operator spaces differ: dim " +
                          std::to_string(a.dim()) + " vs " +
                          std::to_string(b.dim()));
  }
}
}  // namespace

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  check_same_space(a, b);
  return OperatorMatrix(a.space(), a.m_ * b.m_);
}

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
  check_same_space(a, b);
  return OperatorMatrix(a.space(), a.m_ + b.m_);
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
  check_same_space(a, b);
  return OperatorMatrix(a.space(), a.m_ - b.m_);
}

OperatorMatrix operator*(const Complex& c, const OperatorMatrix& a) {
  return OperatorMatrix(a.space(), c * a.m_);
}

OperatorMatrix operator*(const OperatorMatrix& a, const Complex& c) {
  return c * a;
}

// ---------------------------------------------------------------------------
// Ladder operators

OperatorMatrix annihilation(const HilbertSpace& space) {
  const int d = space.dim();
  Matrix m = Matrix::Zero(d, d);
  for (int n = 1; n < d; ++n) m(n - 1, n) = std::sqrt(static_cast<double>(n));
  return OperatorMatrix(space, std::move(m));
}

OperatorMatrix creation(const HilbertSpace& space) {
  return annihilation(space).adjoint();
}

OperatorMatrix number_operator(const HilbertSpace& space) {
  const int d = space.dim();
  Matrix m = Matrix::Zero(d, d);
  for (int n = 0; n < d; ++n) m(n, n) = static_cast<double>(n);
  return OperatorMatrix(space, std::move(m));
}

OperatorMatrix xi_operator(const HilbertSpace& space) {
  const int d = space.dim();
  Matrix m = Matrix::Zero(d, d);
  for (int n = 0; 2 * n + 1 < d; ++n) {
    m(2 * n + 1, 2 * n) = 1.0 / std::sqrt(2.0 * n + 1.0);
  }
  return OperatorMatrix(space, std::move(m));
}

// ---------------------------------------------------------------------------
// Laguerre polynomials and displacement matrices

double laguerre(int p, int alpha, double x) {
  if (p < 0) throw ValidationError("laguerre: degree must be non-negative");
  if (alpha < -p) throw ValidationError("laguerre: order must be >= -degree");
  if (p == 0) return 1.0;
  double lm1 = 1.0;
  double l = 1.0 + alpha - x;
  for (int j = 1; j < p; ++j) {
    const double lp1 = ((2.0 * j + 1.0 + alpha - x) * l - (j + alpha) * lm1) /
                       (j + 1.0);
    lm1 = l;
    l = lp1;
  }
  return l;
}

OperatorMatrix displacement_closed(const Complex& kappa, const HilbertSpace& space,
                                   double kappa_sq_limit) {
  const int d = space.dim();
  const double x = std::norm(kappa);
  if (x > kappa_sq_limit) {
    throw AccuracyError("displacement amplitude too large: |kappa|^2 = " +
                        std::to_string(x) + " exceeds limit " +
                        std::to_string(kappa_sq_limit));
  }
  if (x == 0.0) return OperatorMatrix::identity(space);

  std::vector<double> lgf(d + 1);  // lgf[n] = log(n!)
  for (int n = 0; n <= d; ++n) lgf[n] = std::lgamma(n + 1.0);

  const double log_kappa = 0.5 * std::log(x);
  const double phi = std::arg(kappa);
  Matrix m(d, d);

  // Walk each diagonal |row - col| = diag: the Laguerre degree is the smaller
  // index j, the order is diag, and the three-term recurrence advances in j.
  // The log-gamma factorial ratio keeps magnitudes finite; polynomial values
  // run in long double and rejoin through logs so huge L times a tiny prefactor
  // never over- or underflows on the way.
  for (int diag = 0; diag < d; ++diag) {
    const Complex phase_upper = std::polar(1.0, -diag * phi);
    const Complex phase_lower = (diag % 2 == 0 ? 1.0 : -1.0) *
                                std::polar(1.0, diag * phi);
    long double lprev = 1.0L;                              // L_0^{(diag)}
    long double lcur = 1.0L + diag - static_cast<long double>(x);  // L_1^{(diag)}
    for (int j = 0; j + diag < d; ++j) {
      const long double lj = (j == 0) ? 1.0L : lcur;
      const double base_log =
          0.5 * (lgf[j] - lgf[j + diag]) + diag * log_kappa - 0.5 * x;
      double value = 0.0;
      if (lj != 0.0L) {
        value = static_cast<double>(
            (lj < 0.0L ? -1.0L : 1.0L) *
            std::exp(static_cast<long double>(base_log) + std::log(std::fabs(lj))));
      }
      m(j, j + diag) = value * phase_upper;
      m(j + diag, j) = value * phase_lower;
      if (j >= 1) {
        const long double lnext =
            ((2.0L * j + 1.0L + diag - x) * lcur - (j + diag) * lprev) /
            (j + 1.0L);
        lprev = lcur;
        lcur = lnext;
      }
    }
  }
  return OperatorMatrix(space, std::move(m));
}

OperatorMatrix displacement_exp(const Complex& kappa, const HilbertSpace& space) {
  const int d = space.dim();
  // Generator A = -kappa a^dag + conj(kappa) a is anti-Hermitian; exponentiate
  // through the Hermitian eigendecomposition of H = iA.
  Matrix h = Matrix::Zero(d, d);
  const Complex i(0.0, 1.0);
  for (int n = 1; n < d; ++n) {
    const double root = std::sqrt(static_cast<double>(n));
    h(n - 1, n) = i * std::conj(kappa) * root;
    h(n, n - 1) = -i * kappa * root;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
  const Eigen::VectorXd& lam = eig.eigenvalues();
  Vector ph(d);
  for (int n = 0; n < d; ++n) ph(n) = std::polar(1.0, -lam(n));
  Matrix m = eig.eigenvectors() * ph.asDiagonal() * eig.eigenvectors().adjoint();
  return OperatorMatrix(space, std::move(m));
}

// ---------------------------------------------------------------------------
// Expectations

Complex expectation(const DensityMatrix& rho, const OperatorMatrix& op) {
  if (rho.space() != op.space()) {
    throw ValidationError("expectation: state and operator spaces differ");
  }
  return (rho.elems().cwiseProduct(op.elems().transpose())).sum();
}

Complex expectation(const StateVector& psi, const OperatorMatrix& op) {
  if (psi.space() != op.space()) {
    throw ValidationError("expectation: state and operator spaces differ");
  }
  return (psi.amps().adjoint() * op.elems() * psi.amps())(0);
}

Complex mean_annihilation(const DensityMatrix& rho) {
  Complex s(0.0, 0.0);
  const Matrix& r = rho.elems();
  for (int n = 0; n + 1 < rho.dim(); ++n) {
    s += std::sqrt(n + 1.0) * r(n + 1, n);
  }
  return s;
}

Complex mean_annihilation(const StateVector& psi) {
  Complex s(0.0, 0.0);
  const Vector& a = psi.amps();
  for (int n = 0; n + 1 < psi.dim(); ++n) {
    s += std::sqrt(n + 1.0) * std::conj(a(n)) * a(n + 1);
  }
  return s;
}

}  // namespace excomp::fock
