#pragma once

// Truncated single-mode boson space: number-basis states, density matrices,
// ladder operators and displacement matrices. Everything is dense complex
// algebra over the levels |0> .. |dim-1>; results are certified only on a
// leading block that stays clear of the truncation edge.

#include <complex>
#include <Eigen/Dense>

#include "excomp/errors.hpp"

namespace excomp::fock {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

// ---------------------------------------------------------------------------
// Spaces and states

class HilbertSpace {
 public:
  explicit HilbertSpace(int dim);
  int dim() const { return dim_; }

  friend bool operator==(const HilbertSpace& a, const HilbertSpace& b) {
    return a.dim_ == b.dim_;
  }
  friend bool operator!=(const HilbertSpace& a, const HilbertSpace& b) {
    return !(a == b);
  }

 private:
  int dim_;
};

// Levels sacrificed to the truncation edge after a displacement of modulus
// |kappa|: population pushed toward the cutoff contaminates roughly the top
// 4|kappa|^2 levels, never fewer than 10.
int guard_levels(double kappa_abs);

// Conservative count of low-lying levels on which displaced results are
// certified against truncation artifacts: dim - ceil(4 |kappa|^2) - 10,
// clamped to zero.
int certified_levels(const HilbertSpace& space, double kappa_abs);

// Normalized amplitude vector over number states. Construction renormalizes
// silently when the norm is within 1e-6 of one and rejects otherwise.
class StateVector {
 public:
  static StateVector from_amplitudes(const HilbertSpace& space, Vector amps);

  const HilbertSpace& space() const { return space_; }
  const Vector& amps() const { return amps_; }
  Complex amp(int n) const { return amps_(n); }
  int dim() const { return space_.dim(); }

 private:
  StateVector(const HilbertSpace& space, Vector amps)
      : space_(space), amps_(std::move(amps)) {}
  HilbertSpace space_;
  Vector amps_;
};

// Hermitian, unit-trace, positive-semidefinite matrix over number states.
// Construction symmetrizes tiny Hermiticity noise, renormalizes a trace
// within 1e-6 of one, and rejects eigenvalues below -1e-10.
class DensityMatrix {
 public:
  static DensityMatrix from_matrix(const HilbertSpace& space, Matrix rho);
  static DensityMatrix pure(const StateVector& psi);

  const HilbertSpace& space() const { return space_; }
  const Matrix& elems() const { return rho_; }
  int dim() const { return space_.dim(); }
  double purity() const;  // tr(rho^2)

 private:
  DensityMatrix(const HilbertSpace& space, Matrix rho)
      : space_(space), rho_(std::move(rho)) {}
  HilbertSpace space_;
  Matrix rho_;
};

// Dense operator tagged with its space so mismatched products fail loudly.
class OperatorMatrix {
 public:
  OperatorMatrix(const HilbertSpace& space, Matrix m);
  static OperatorMatrix identity(const HilbertSpace& space);

  const HilbertSpace& space() const { return space_; }
  const Matrix& elems() const { return m_; }
  int dim() const { return space_.dim(); }
  OperatorMatrix adjoint() const;
  double max_abs() const;

  friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator*(const Complex& c, const OperatorMatrix& a);
  friend OperatorMatrix operator*(const OperatorMatrix& a, const Complex& c);

 private:
  HilbertSpace space_;
  Matrix m_;
};

// ---------------------------------------------------------------------------
// Operators

// Lowering operator: <n-1| a |n> = sqrt(n).
OperatorMatrix annihilation(const HilbertSpace& space);

// Raising operator, the adjoint of annihilation.
OperatorMatrix creation(const HilbertSpace& space);

// Photon-number operator diag(0, 1, ..., dim-1).
OperatorMatrix number_operator(const HilbertSpace& space);

// Odd-step inverse ladder X with <2m+1| X |2m> = 1/sqrt(2m+1) and all other
// entries zero. It solves the operator equation X a + a X = 1, exactly on
// levels n <= dim-2 of the truncated ladder.
OperatorMatrix xi_operator(const HilbertSpace& space);

// Generalized Laguerre polynomial L_p^{(alpha)}(x) by the stable three-term
// recurrence in the degree. Requires p >= 0 and integer alpha >= -p.
double laguerre(int p, int alpha, double x);

// Displacement matrix built column by column from closed-form matrix
// elements: column m holds exp(-|kappa|^2/2) times a Laguerre kernel, with
// column 0 equal to the coherent state of amplitude -kappa. Factorial ratios
// go through log-gamma so large dims cannot overflow. Throws AccuracyError
// once exp(-|kappa|^2/2) would underflow every column (|kappa|^2 above
// kappa_sq_limit).
OperatorMatrix displacement_closed(const Complex& kappa, const HilbertSpace& space,
                                   double kappa_sq_limit = 1400.0);

// The same displacement obtained as a true matrix exponential of
// (-kappa) a^dag - conj(-kappa) a, via the Hermitian eigendecomposition of
// its generator. Serves as the independent cross-check for
// displacement_closed.
OperatorMatrix displacement_exp(const Complex& kappa, const HilbertSpace& space);

// ---------------------------------------------------------------------------
// Expectations

// tr(rho * op)
Complex expectation(const DensityMatrix& rho, const OperatorMatrix& op);

// <psi| op |psi>
Complex expectation(const StateVector& psi, const OperatorMatrix& op);

// Literal summation sum_n sqrt(n+1) rho_{n+1,n}; equals expectation(rho, a).
Complex mean_annihilation(const DensityMatrix& rho);

// Same sum for a pure state: sum_n sqrt(n+1) conj(A_n) A_{n+1}.
Complex mean_annihilation(const StateVector& psi);

}  // namespace excomp::fock
