#include "cmtk/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cmtk/error.hpp"

namespace cmtk {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Rotation that diagonalizes the Hermitian 2x2 block [[a, c], [conj(c), b]]:
// J = [[cs, sn*e], [-sn*conj(e), cs]] with e = c/|c|, so that J* H J is
// diagonal. Same construction serves the eigensolver and the SVD.
struct Rotation {
  double cs;
  double sn;
  Complex e;
};

Rotation make_rotation(double a, double b, Complex c, double abs_c) {
  const double zeta = (b - a) / (2.0 * abs_c);
  double t;
  if (std::abs(zeta) > 1e150) {
    t = 0.5 / zeta;
  } else {
    t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
  }
  const double cs = 1.0 / std::sqrt(1.0 + t * t);
  return {cs, t * cs, c / abs_c};
}

// Right-multiply columns (p, q) of m by J.
void rotate_columns(Matrix& m, Eigen::Index p, Eigen::Index q, const Rotation& r) {
  const Complex a = -r.sn * std::conj(r.e);
  const Complex b = r.sn * r.e;
  for (Eigen::Index k = 0; k < m.rows(); ++k) {
    const Complex mp = m(k, p);
    const Complex mq = m(k, q);
    m(k, p) = r.cs * mp + a * mq;
    m(k, q) = b * mp + r.cs * mq;
  }
}

// Left-multiply rows (p, q) of m by J*.
void rotate_rows_adjoint(Matrix& m, Eigen::Index p, Eigen::Index q, const Rotation& r) {
  const Complex a = -r.sn * r.e;
  const Complex b = r.sn * std::conj(r.e);
  for (Eigen::Index k = 0; k < m.cols(); ++k) {
    const Complex mp = m(p, k);
    const Complex mq = m(q, k);
    m(p, k) = r.cs * mp + a * mq;
    m(q, k) = b * mp + r.cs * mq;
  }
}

double off_diagonal_norm(const Matrix& a) {
  double off = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j) off += std::norm(a(i, j));
    }
  }
  return std::sqrt(off);
}

HermitianEigen jacobi_eigen(const Matrix& h, bool want_basis) {
  if (h.rows() != h.cols()) {
    throw Error(ErrorKind::ShapeError, "hermitian_eig needs a square matrix");
  }
  if (!is_hermitian(h)) {
    throw Error(ErrorKind::NotHermitian, "input fails the Hermitian symmetry check");
  }
  const Eigen::Index n = h.rows();
  Matrix a = (h + h.adjoint()) * 0.5;
  Matrix v;
  if (want_basis) v = Matrix::Identity(n, n);

  const double threshold = 1e-14 * a.norm();
  bool converged = false;
  for (int sweep = 0; sweep <= kJacobiSweepBudget; ++sweep) {
    if (off_diagonal_norm(a) <= threshold) {
      converged = true;
      break;
    }
    if (sweep == kJacobiSweepBudget) break;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex c = a(p, q);
        const double g = std::abs(c);
        if (g == 0.0) continue;
        const Rotation r = make_rotation(a(p, p).real(), a(q, q).real(), c, g);
        rotate_columns(a, p, q, r);
        rotate_rows_adjoint(a, p, q, r);
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        if (want_basis) rotate_columns(v, p, q, r);
      }
    }
  }
  if (!converged) {
    throw Error(ErrorKind::NoConvergence, "Jacobi eigensolver exceeded its sweep budget");
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return a(i, i).real() < a(j, j).real();
  });

  HermitianEigen out;
  out.values.resize(n);
  if (want_basis) out.basis.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto src = order[static_cast<std::size_t>(k)];
    out.values(k) = a(src, src).real();
    if (want_basis) out.basis.col(k) = v.col(src);
  }
  return out;
}

// Hestenes iteration: orthogonalizes the columns of `a` in place, accumulating
// the right rotations into `v` when given. Requires rows >= cols.
void one_sided_jacobi(Matrix& a, Matrix* v) {
  const Eigen::Index n = a.cols();
  const double tol = kEps * static_cast<double>(std::max<Eigen::Index>(a.rows(), 1));
  for (int sweep = 0; sweep < kJacobiSweepBudget; ++sweep) {
    bool rotated = false;
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const double alpha = a.col(i).squaredNorm();
        const double beta = a.col(j).squaredNorm();
        const Complex gamma = a.col(i).dot(a.col(j));
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= tol * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const Rotation r = make_rotation(alpha, beta, gamma, g);
        rotate_columns(a, i, j, r);
        if (v != nullptr) rotate_columns(*v, i, j, r);
      }
    }
    if (!rotated) return;
  }
  throw Error(ErrorKind::NoConvergence, "one-sided Jacobi SVD exceeded its sweep budget");
}

std::vector<Eigen::Index> descending_order(const RealVector& values) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return values(i) > values(j); });
  return order;
}

// Orthonormalizes the first `filled` columns of u (modified Gram-Schmidt,
// twice) and completes the rest from the standard basis.
void orthonormal_completion(Matrix& u, Eigen::Index filled) {
  const Eigen::Index m = u.rows();
  auto project_out = [&](Eigen::VectorXcd& x, Eigen::Index upto) {
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index k = 0; k < upto; ++k) x -= u.col(k) * u.col(k).dot(x);
    }
  };
  Eigen::Index accepted = 0;
  for (Eigen::Index k = 0; k < filled; ++k) {
    Eigen::VectorXcd x = u.col(k);
    project_out(x, accepted);
    const double nx = x.norm();
    if (nx < 0.5) continue;
    u.col(accepted++) = x / nx;
  }
  // Greedy: the basis vector with the largest remainder is at least
  // 1/sqrt(m) long, so no fixed threshold can be relied on.
  while (accepted < u.cols()) {
    Eigen::VectorXcd best;
    double best_norm = -1.0;
    for (Eigen::Index c = 0; c < m; ++c) {
      Eigen::VectorXcd x = Eigen::VectorXcd::Unit(m, c);
      project_out(x, accepted);
      const double nx = x.norm();
      if (nx > best_norm) {
        best_norm = nx;
        best = std::move(x);
      }
    }
    u.col(accepted++) = best / best_norm;
  }
}

SvdResult svd_tall(const Matrix& x) {
  const Eigen::Index m = x.rows();
  const Eigen::Index n = x.cols();
  Matrix a = x;
  Matrix v = Matrix::Identity(n, n);
  one_sided_jacobi(a, &v);

  RealVector norms(n);
  for (Eigen::Index k = 0; k < n; ++k) norms(k) = a.col(k).norm();
  const auto order = descending_order(norms);

  SvdResult out;
  out.singulars.resize(n);
  out.right.resize(n, n);
  out.left = Matrix::Zero(m, m);
  const double smax = n > 0 ? norms(order.front()) : 0.0;
  const double cutoff = smax * kEps * static_cast<double>(std::max(m, n));
  Eigen::Index filled = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto src = order[static_cast<std::size_t>(k)];
    out.singulars(k) = norms(src);
    out.right.col(k) = v.col(src);
    if (norms(src) > cutoff && norms(src) > 0.0) {
      out.left.col(filled++) = a.col(src) / norms(src);
    }
  }
  orthonormal_completion(out.left, filled);
  return out;
}

}  // namespace

Exponent::Exponent(double p_value) : p(p_value) {
  if (!(p_value > 0.0) || !std::isfinite(p_value)) {
    throw Error(ErrorKind::BadExponent, "Schatten exponent must be finite and > 0");
  }
  if (p_value > 1.0) q = p_value / (p_value - 1.0);
}

double Exponent::conjugate() const {
  if (!q) throw Error(ErrorKind::BadExponent, "conjugate exponent needs p > 1");
  return *q;
}

HermitianEigen hermitian_eig(const Matrix& h) { return jacobi_eigen(h, true); }

RealVector hermitian_eigenvalues(const Matrix& h) { return jacobi_eigen(h, false).values; }

SvdResult svd(const Matrix& x) {
  if (x.rows() >= x.cols()) return svd_tall(x);
  SvdResult t = svd_tall(x.adjoint());
  return {std::move(t.right), std::move(t.singulars), std::move(t.left)};
}

RealVector singular_values(const Matrix& x) {
  Matrix a = x.rows() >= x.cols() ? Matrix(x) : Matrix(x.adjoint());
  one_sided_jacobi(a, nullptr);
  RealVector s(a.cols());
  for (Eigen::Index k = 0; k < a.cols(); ++k) s(k) = a.col(k).norm();
  std::sort(s.data(), s.data() + s.size(), std::greater<>());
  return s;
}

double schatten_power(const Matrix& x, double p) {
  if (!(p > 0.0)) throw Error(ErrorKind::BadExponent, "Schatten exponent must be > 0");
  const RealVector s = singular_values(x);
  double sum = 0.0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) > 0.0) sum += std::pow(s(k), p);
  }
  return sum;
}

double schatten_norm(const Matrix& x, const Exponent& p) {
  return std::pow(schatten_power(x, p.p), 1.0 / p.p);
}

Matrix psd_power(const Matrix& h, double r) {
  if (!(r > 0.0)) throw Error(ErrorKind::BadExponent, "matrix power must be > 0");
  const HermitianEigen eig = hermitian_eig(h);
  const Eigen::Index n = eig.values.size();
  const double scale = n > 0 ? eig.values.cwiseAbs().maxCoeff() : 0.0;
  RealVector d(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    double lambda = eig.values(k);
    if (lambda < 0.0) {
      if (lambda < -1e-10 * scale) {
        throw Error(ErrorKind::NegativeEigenvalue,
                    "eigenvalue " + std::to_string(lambda) + " of a PSD operand");
      }
      lambda = 0.0;
    }
    d(k) = lambda > 0.0 ? std::pow(lambda, r) : 0.0;
  }
  Matrix out = eig.basis * d.asDiagonal() * eig.basis.adjoint();
  return (out + out.adjoint()) * 0.5;
}

Matrix abs_power(const Matrix& x, double r) {
  return psd_power(x.adjoint() * x, r / 2.0);
}

Polar polar(const Matrix& x) {
  if (x.rows() != x.cols()) throw Error(ErrorKind::ShapeError, "polar needs a square matrix");
  const SvdResult s = svd(x);
  Matrix modulus = s.right * s.singulars.asDiagonal() * s.right.adjoint();
  return {s.left * s.right.adjoint(), (modulus + modulus.adjoint()) * 0.5};
}

Matrix direct_sum(std::span<const Matrix> blocks) {
  Eigen::Index side = 0;
  for (const auto& b : blocks) {
    if (b.rows() != b.cols()) throw Error(ErrorKind::ShapeError, "direct_sum blocks must be square");
    side += b.rows();
  }
  Matrix out = Matrix::Zero(side, side);
  Eigen::Index at = 0;
  for (const auto& b : blocks) {
    out.block(at, at, b.rows(), b.cols()) = b;
    at += b.rows();
  }
  return out;
}

double max_abs(const Matrix& x) { return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff(); }

bool all_finite(const Matrix& x) {
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    if (!std::isfinite(x.data()[k].real()) || !std::isfinite(x.data()[k].imag())) return false;
  }
  return true;
}

double unitarity_residual(const Matrix& u) {
  return max_abs(u.adjoint() * u - Matrix::Identity(u.cols(), u.cols()));
}

double tolerance_scale(const Matrix& x) {
  const RealVector s = singular_values(x);
  return std::max(1.0, s.size() > 0 ? s(0) : 0.0);
}

bool is_hermitian(const Matrix& h, double tol) {
  if (h.rows() != h.cols()) return false;
  return max_abs(h - h.adjoint()) <= tol * std::max(1.0, max_abs(h));
}

}  // namespace cmtk
