#include "cmtk/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cmtk/error.hpp"

namespace cmtk {

namespace {

void require_psd(const Matrix& h) {
  if (h.rows() != h.cols() || !is_hermitian(h)) {
    throw Error(ErrorKind::NotPSD, "decomposition input must be Hermitian PSD");
  }
  const RealVector ev = hermitian_eigenvalues(h);
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  if (ev.size() > 0 && ev.minCoeff() < -1e-10 * scale) {
    throw Error(ErrorKind::NotPSD, "decomposition input has a negative eigenvalue");
  }
}

Matrix padded_block(const Matrix& h, Eigen::Index at, Eigen::Index size) {
  Matrix s = Matrix::Zero(h.rows(), h.cols());
  s.block(at, at, size, size) = h.block(at, at, size, size);
  return s;
}

double reconstruction_residual(const Matrix& h, const DecompositionResult& d) {
  Matrix sum = Matrix::Zero(h.rows(), h.cols());
  for (std::size_t i = 0; i < d.unitaries.size(); ++i) {
    sum += d.unitaries[i] * d.summands[i] * d.unitaries[i].adjoint();
  }
  return max_abs(h - sum) / std::max(1.0, max_abs(h));
}

Matrix embed_tail(const Matrix& u, Eigen::Index side) {
  Matrix out = Matrix::Identity(side, side);
  out.bottomRightCorner(u.rows(), u.cols()) = u;
  return out;
}

}  // namespace

DecompositionResult pinch2(const Matrix& h, Eigen::Index a, Eigen::Index b) {
  if (a < 1 || b < 1 || a + b != h.rows()) {
    throw Error(ErrorKind::BadSplit, "split sizes must be positive and sum to the side");
  }
  require_psd(h);
  const Eigen::Index n = a + b;
  const Matrix t = psd_power(h, 0.5);

  // T1 = P [S; 0] Q*  gives  T1 T1* = U (A + 0) U*  with  U = P diag(Q*, I).
  const SvdResult s1 = svd(t.leftCols(a));
  Matrix d1 = Matrix::Identity(n, n);
  d1.topLeftCorner(a, a) = s1.right.adjoint();
  const Matrix u = s1.left * d1;

  // Same for T2, then move the lower b coordinates to the front.
  const SvdResult s2 = svd(t.rightCols(b));
  Matrix d2 = Matrix::Identity(n, n);
  d2.topLeftCorner(b, b) = s2.right.adjoint();
  Matrix perm = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < b; ++i) perm(i, a + i) = 1.0;
  for (Eigen::Index j = 0; j < a; ++j) perm(b + j, j) = 1.0;
  const Matrix v = s2.left * d2 * perm;

  DecompositionResult out{{u, v}, {padded_block(h, 0, a), padded_block(h, a, b)}, 0.0};
  out.residual = reconstruction_residual(h, out);
  return out;
}

DecompositionResult pinch_n(const Matrix& h, std::span<const Eigen::Index> splits) {
  if (splits.empty()) throw Error(ErrorKind::BadSplit, "no block sizes given");
  Eigen::Index total = 0;
  for (const auto s : splits) {
    if (s < 1) throw Error(ErrorKind::BadSplit, "block sizes must be positive");
    total += s;
  }
  if (total != h.rows()) throw Error(ErrorKind::BadSplit, "block sizes must sum to the side");
  if (splits.size() == 1) {
    require_psd(h);
    return {{Matrix::Identity(h.rows(), h.cols())}, {h}, 0.0};
  }
  if (splits.size() == 2) return pinch2(h, splits[0], splits[1]);

  const std::size_t n = splits.size();
  std::vector<Eigen::Index> merged(splits.begin(), splits.end() - 1);
  merged.back() += splits[n - 1];
  DecompositionResult head = pinch_n(h, merged);

  const Eigen::Index tail = merged.back();
  const Eigen::Index at = h.rows() - tail;
  const DecompositionResult inner =
      pinch2(h.block(at, at, tail, tail), splits[n - 2], splits[n - 1]);

  const Matrix v_last = head.unitaries.back();
  head.unitaries.pop_back();
  head.summands.pop_back();
  head.unitaries.push_back(v_last * embed_tail(inner.unitaries[0], h.rows()));
  head.unitaries.push_back(v_last * embed_tail(inner.unitaries[1], h.rows()));
  head.summands.push_back(padded_block(h, at, splits[n - 2]));
  head.summands.push_back(padded_block(h, at + splits[n - 2], splits[n - 1]));
  head.residual = reconstruction_residual(h, head);
  return head;
}

CirculantCheck circulant_identity(std::span<const Matrix> a) {
  const Matrix t = block_circulant(a);
  const Eigen::Index m = a.front().rows();
  const auto n = static_cast<Eigen::Index>(a.size());

  std::vector<double> lhs;
  lhs.reserve(static_cast<std::size_t>(n * m));
  for (const auto& c : root_combinations(a)) {
    const RealVector ev = hermitian_eigenvalues(c.adjoint() * c);
    lhs.insert(lhs.end(), ev.data(), ev.data() + ev.size());
  }
  std::sort(lhs.begin(), lhs.end());

  CirculantCheck out;
  out.lhs_spectrum = Eigen::Map<const RealVector>(lhs.data(), static_cast<Eigen::Index>(lhs.size()));
  out.rhs_spectrum = hermitian_eigenvalues(t.adjoint() * t);
  out.max_gap = (out.lhs_spectrum - out.rhs_spectrum).cwiseAbs().maxCoeff();

  const Matrix f = fourier_matrix(static_cast<int>(n)).matrix();
  out.fourier_kron = Matrix::Zero(n * m, n * m);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      out.fourier_kron.block(r * m, c * m, m, m) = f(r, c) * Matrix::Identity(m, m);
    }
  }
  return out;
}

OrbitReport orbit_consequence_suite(const IdentityScheme& scheme, double p,
                                    std::span<const Matrix> z) {
  OrbitReport report;
  report.cases = eval_sum_of_squares_trace(scheme, p, z);
  if (p >= 2.0) {
    const auto x = apply_coefficients(scheme.left, z);
    const auto y = apply_coefficients(scheme.right, z);
    const int m = static_cast<int>(z.front().cols());
    for (int k = 1; k <= m; ++k) {
      const auto c = eval_antinorm(p, k, x, y);
      report.cases.insert(report.cases.end(), c.begin(), c.end());
    }
  }
  if (scheme.label == 1) {
    const auto c = eval_roots("BK_P", p, z);
    report.cases.insert(report.cases.end(), c.begin(), c.end());
  }
  report.min_rel_margin = std::numeric_limits<double>::infinity();
  for (const auto& c : report.cases) {
    report.min_rel_margin = std::min(report.min_rel_margin, c.rel_margin);
    if (c.violated()) ++report.violations;
  }
  return report;
}

}  // namespace cmtk
