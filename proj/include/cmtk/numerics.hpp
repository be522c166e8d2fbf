#pragma once

// Dense complex kernels: Jacobi eigensolver and SVD, Schatten norms and
// matrix functions built on them. Everything here is a pure function.

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace cmtk {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Schatten exponent p > 0 with its conjugate q = p/(p-1), present iff p > 1.
struct Exponent {
  double p;
  std::optional<double> q;

  explicit Exponent(double p);

  /// q, or throws BadExponent when p <= 1.
  double conjugate() const;
};

struct HermitianEigen {
  RealVector values;  // ascending
  Matrix basis;       // unitary, columns are eigenvectors
};

struct SvdResult {
  Matrix left;           // rows x rows, unitary
  RealVector singulars;  // min(rows, cols), descending
  Matrix right;          // cols x cols, unitary
};

struct Polar {
  Matrix unitary;  // W
  Matrix modulus;  // P = |X|
};

inline constexpr int kJacobiSweepBudget = 60;

/// Cyclic complex Jacobi. Throws NotHermitian or NoConvergence.
HermitianEigen hermitian_eig(const Matrix& h);

/// Eigenvalues only, ascending.
RealVector hermitian_eigenvalues(const Matrix& h);

/// One-sided (Hestenes) Jacobi SVD with orthonormal completion of both bases.
SvdResult svd(const Matrix& x);

/// Singular values only, descending. Skips all basis accumulation.
RealVector singular_values(const Matrix& x);

double schatten_norm(const Matrix& x, const Exponent& p);

/// Sum of s_j(X)^p, i.e. the p-th power of the Schatten norm without the root.
double schatten_power(const Matrix& x, double p);

/// h^r for Hermitian PSD h, with small negative eigenvalues clamped to zero.
/// Throws NegativeEigenvalue when an eigenvalue is below -1e-10 * scale.
Matrix psd_power(const Matrix& h, double r);

/// |X|^r = (X*X)^{r/2}.
Matrix abs_power(const Matrix& x, double r);

/// X = W * P with W unitary and P = |X|. X must be square.
Polar polar(const Matrix& x);

/// Block-diagonal matrix of square blocks.
Matrix direct_sum(std::span<const Matrix> blocks);

double max_abs(const Matrix& x);
bool all_finite(const Matrix& x);

/// max |U*U - I| entrywise.
double unitarity_residual(const Matrix& u);

/// max(1, largest singular value) -- the per-call tolerance scale.
double tolerance_scale(const Matrix& x);

/// Hermitian check in the entrywise max metric, relative to max(1, max|h|).
bool is_hermitian(const Matrix& h, double tol = 1e-10);

}  // namespace cmtk
