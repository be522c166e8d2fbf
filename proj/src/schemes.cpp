#include "cmtk/schemes.hpp"

#include <cmath>
#include <numbers>

#include "cmtk/error.hpp"

namespace cmtk {

namespace {

void require_positive(int n, const char* what) {
  if (n < 1) throw Error(ErrorKind::BadDimension, std::string(what) + " needs n >= 1");
}

// Rows: all-ones, then e_i - e_j for i < j. Unnormalized.
Matrix pairwise_rows(int n) {
  const Eigen::Index rows = n * (n - 1) / 2 + 1;
  Matrix out = Matrix::Zero(rows, n);
  out.row(0).setOnes();
  Eigen::Index r = 1;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      out(r, i) = 1.0;
      out(r, j) = -1.0;
      ++r;
    }
  }
  return out;
}

// Rows: all-ones, then ones - (n+1)/2 e_j. Unnormalized.
Matrix centroid_rows(int n) {
  Matrix out = Matrix::Ones(n + 1, n);
  for (int j = 0; j < n; ++j) out(j + 1, j) -= (n + 1) / 2.0;
  return out;
}

// Rows e_j - (1/n) ones, then (1/sqrt n) ones.
Matrix variance_rows(int n) {
  Matrix out = Matrix::Constant(n + 1, n, Complex(-1.0 / n, 0.0));
  for (int j = 0; j < n; ++j) out(j, j) += 1.0;
  out.row(n).setConstant(1.0 / std::sqrt(static_cast<double>(n)));
  return out;
}

Matrix roots_matrix(int n) {
  Matrix out(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      // Reduce the exponent mod n so large products keep full accuracy.
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / n;
      out(j, k) = std::polar(1.0, angle);
    }
  }
  return out;
}

void check_tuple(const Matrix& u, std::span<const Matrix> y) {
  if (static_cast<Eigen::Index>(y.size()) != u.cols()) {
    throw Error(ErrorKind::ShapeError, "tuple length must equal the coefficient column count");
  }
  for (const auto& m : y) {
    if (m.rows() != y.front().rows() || m.cols() != y.front().cols()) {
      throw Error(ErrorKind::ShapeError, "tuple operands must share one shape");
    }
  }
}

}  // namespace

Subunitary Subunitary::checked(Matrix u, double tol) {
  const SubunitaryCheck c = is_subunitary(u, tol);
  if (!c.ok) {
    throw Error(ErrorKind::NotSubunitary, "column Gram residual " + std::to_string(c.residual));
  }
  return Subunitary(std::move(u));
}

SubunitaryCheck is_subunitary(const Matrix& u, double tol) {
  if (u.rows() < u.cols()) throw Error(ErrorKind::ShapeError, "subunitary needs rows >= cols");
  const double r = unitarity_residual(u);
  return {r <= tol, r};
}

double IdentityScheme::gram_residual() const {
  return max_abs(left.adjoint() * left - right.adjoint() * right);
}

Subunitary fourier_matrix(int n) {
  require_positive(n, "fourier_matrix");
  return Subunitary::checked(roots_matrix(n) / std::sqrt(static_cast<double>(n)));
}

Matrix littlewood(int level) {
  if (level < 0) throw Error(ErrorKind::BadDimension, "littlewood level must be >= 0");
  Matrix l = Matrix::Ones(1, 1);
  for (int k = 0; k < level; ++k) {
    const Eigen::Index h = l.rows();
    Matrix next(2 * h, 2 * h);
    next << l, l, l, -l;
    l = std::move(next);
  }
  return l;
}

Matrix sign_matrix(int n) {
  require_positive(n, "sign_matrix");
  const Eigen::Index rows = Eigen::Index{1} << n;
  Matrix out(rows, n);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (int i = 0; i < n; ++i) {
      const bool bit = (r >> (n - 1 - i)) & 1;  // k_1 is the most significant bit
      out(r, i) = bit ? -1.0 : 1.0;
    }
  }
  return out;
}

Table5Entry table5_subunitary(int label, int n) {
  require_positive(n, "table5_subunitary");
  const double rn = std::sqrt(static_cast<double>(n));
  switch (label) {
    case 0: {
      Matrix u(2, 2);
      u << 1.0, 1.0, 1.0, -1.0;
      return {Subunitary::checked(u / std::sqrt(2.0)), std::sqrt(2.0)};
    }
    case 1:
      return {fourier_matrix(n), rn};
    case 2: {
      const double s = std::pow(2.0, n / 2.0);
      return {Subunitary::checked(littlewood(n) / s), s};
    }
    case 3:
      return {Subunitary::checked(pairwise_rows(n) / rn), rn};
    case 5:
      if (n < 3) throw Error(ErrorKind::BadDimension, "table5 label 5 needs n >= 3");
      return {Subunitary::checked(centroid_rows(n) * (2.0 / (n + 1))), (n + 1) / 2.0};
    case 6:
      if (n < 3) throw Error(ErrorKind::BadDimension, "table5 label 6 needs n >= 3");
      return {Subunitary::checked(variance_rows(n)), 1.0};
    case 7: {
      const double s = std::pow(2.0, n / 2.0);
      return {Subunitary::checked(sign_matrix(n) / s), s};
    }
    default:
      throw Error(ErrorKind::BadLabel, "table5 label " + std::to_string(label));
  }
}

double table5_printed_constant(int label, int n, double p) {
  const double q = Exponent(p).conjugate();
  const double e = q / p - 1.0;
  switch (label) {
    case 0:
      return 2.0;
    case 1:
    case 3:
      return n;
    case 2:
    case 7:
      return std::pow(2.0, n);
    case 5:
      if (n < 3) throw Error(ErrorKind::BadDimension, "table5 label 5 needs n >= 3");
      return std::pow((n - 1) / 2.0, e) * std::pow((n + 1) / 2.0, 2.0);
    case 6:
      if (n < 3) throw Error(ErrorKind::BadDimension, "table5 label 6 needs n >= 3");
      return std::pow((n - 1.0) / n, e);
    default:
      throw Error(ErrorKind::BadLabel, "table5 label " + std::to_string(label));
  }
}

IdentityScheme table1_scheme(int label, int n) {
  require_positive(n, "table1_scheme");
  const double rn = std::sqrt(static_cast<double>(n));
  IdentityScheme s{Matrix(), Matrix(), 1.0, label, n};
  auto with_multiple = [&](Matrix l, double c) {
    s.right = Matrix::Identity(l.cols(), l.cols()) * c;
    s.left = std::move(l);
    s.scale = c;
  };
  switch (label) {
    case 0: {
      Matrix l(2, 2);
      l << 1.0, 1.0, 1.0, -1.0;
      with_multiple(std::move(l), std::sqrt(2.0));
      s.n = 2;
      break;
    }
    case 1:
      with_multiple(roots_matrix(n), rn);
      break;
    case 2:
      with_multiple(littlewood(n), std::pow(2.0, n / 2.0));
      break;
    case 3:
      with_multiple(pairwise_rows(n), rn);
      break;
    case 4: {
      // Base operands (x_1..x_n, y_1..y_n).
      const Eigen::Index pairs = n * (n - 1) / 2;
      Matrix l = Matrix::Zero(1 + 2 * pairs, 2 * n);
      l.row(0).head(n).setOnes();
      l.row(0).tail(n).setConstant(-1.0);
      Eigen::Index r = 1;
      for (int side = 0; side < 2; ++side) {
        for (int i = 0; i < n; ++i) {
          for (int j = i + 1; j < n; ++j) {
            l(r, side * n + i) = 1.0;
            l(r, side * n + j) = -1.0;
            ++r;
          }
        }
      }
      Matrix rr = Matrix::Zero(n * n, 2 * n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          rr(i * n + j, i) = 1.0;
          rr(i * n + j, n + j) = -1.0;
        }
      }
      s.left = std::move(l);
      s.right = std::move(rr);
      s.scale = 1.0;
      break;
    }
    case 5:
      with_multiple(centroid_rows(n), (n + 1) / 2.0);
      break;
    case 6:
      with_multiple(variance_rows(n), 1.0);
      break;
    case 7:
      with_multiple(sign_matrix(n), std::pow(2.0, n / 2.0));
      break;
    default:
      throw Error(ErrorKind::BadLabel, "table1 label " + std::to_string(label));
  }
  return s;
}

std::vector<Matrix> apply_coefficients(const Matrix& u, std::span<const Matrix> y) {
  check_tuple(u, y);
  std::vector<Matrix> x;
  x.reserve(static_cast<std::size_t>(u.rows()));
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    Matrix xi = Matrix::Zero(y.front().rows(), y.front().cols());
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
      if (u(i, j) != Complex(0.0)) xi += u(i, j) * y[static_cast<std::size_t>(j)];
    }
    x.push_back(std::move(xi));
  }
  return x;
}

std::vector<Matrix> apply_scheme(const Subunitary& u, std::span<const Matrix> y) {
  return apply_coefficients(u.matrix(), y);
}

Matrix sum_of_squares(std::span<const Matrix> x) {
  if (x.empty()) throw Error(ErrorKind::ShapeError, "sum_of_squares of an empty tuple");
  Matrix s = Matrix::Zero(x.front().cols(), x.front().cols());
  for (const auto& m : x) s += m.adjoint() * m;
  return s;
}

double verify_identity(const IdentityScheme& scheme, std::span<const Matrix> z) {
  if (scheme.left.cols() != scheme.right.cols()) {
    throw Error(ErrorKind::ShapeError, "scheme L and R disagree on base count");
  }
  const auto x = apply_coefficients(scheme.left, z);
  const auto y = apply_coefficients(scheme.right, z);
  const Matrix sy = sum_of_squares(y);
  return max_abs(sum_of_squares(x) - sy) / std::max(1.0, max_abs(sy));
}

Matrix block_circulant(std::span<const Matrix> a) {
  if (a.empty()) throw Error(ErrorKind::ShapeError, "block_circulant of an empty tuple");
  const Eigen::Index m = a.front().rows();
  for (const auto& b : a) {
    if (b.rows() != m || b.cols() != m) {
      throw Error(ErrorKind::ShapeError, "block_circulant blocks must be square and equal");
    }
  }
  const auto n = static_cast<Eigen::Index>(a.size());
  Matrix t(n * m, n * m);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      t.block(r * m, c * m, m, m) = a[static_cast<std::size_t>((c - r + n) % n)];
    }
  }
  return t;
}

EnsembleKind parse_ensemble_kind(const std::string& name) {
  if (name == "ginibre") return EnsembleKind::ginibre;
  if (name == "haar_unitary") return EnsembleKind::haar_unitary;
  if (name == "psd") return EnsembleKind::psd;
  if (name == "hermitian") return EnsembleKind::hermitian;
  if (name == "schatten_unit") return EnsembleKind::schatten_unit;
  throw Error(ErrorKind::BadInput, "unknown ensemble '" + name + "'");
}

Matrix haar_from_ginibre(const Matrix& g) {
  if (g.rows() != g.cols()) throw Error(ErrorKind::ShapeError, "haar_from_ginibre needs a square sample");
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index k = 0; k < g.cols(); ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

Matrix haar_columns(const Matrix& g, Eigen::Index cols) {
  if (cols > g.cols()) throw Error(ErrorKind::ShapeError, "more columns requested than available");
  return haar_from_ginibre(g).leftCols(cols);
}

Matrix random_matrix(const EnsembleConfig& config) {
  require_positive(config.dim, "random_matrix");
  Rng rng(config.seed);
  const Matrix g = ginibre(config.dim, config.dim, rng);
  switch (config.kind) {
    case EnsembleKind::ginibre:
      return g;
    case EnsembleKind::haar_unitary:
      return haar_from_ginibre(g);
    case EnsembleKind::psd: {
      Matrix h = g.adjoint() * g / static_cast<double>(config.dim);
      return (h + h.adjoint()) * 0.5;
    }
    case EnsembleKind::hermitian:
      return (g + g.adjoint()) * 0.5;
    case EnsembleKind::schatten_unit:
      return g / schatten_norm(g, Exponent(config.p));
  }
  return g;
}

}  // namespace cmtk
