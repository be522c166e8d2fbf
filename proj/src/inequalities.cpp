#include "cmtk/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "cmtk/error.hpp"

namespace cmtk {

namespace {

constexpr double kPivotTol = 1e-12;

double power_sum(const Matrix& x, double p) { return schatten_power(x, p); }

double norm_p(const Matrix& x, double p) { return std::pow(schatten_power(x, p), 1.0 / p); }

double power_sum(std::span<const Matrix> xs, double p) {
  double s = 0.0;
  for (const auto& x : xs) s += schatten_power(x, p);
  return s;
}

// sum ||x||_p^r
double norm_sum(std::span<const Matrix> xs, double p, double r) {
  double s = 0.0;
  for (const auto& x : xs) s += std::pow(norm_p(x, p), r);
  return s;
}

void require_same_shape(std::span<const Matrix> xs) {
  if (xs.empty()) throw Error(ErrorKind::ShapeError, "empty operand tuple");
  for (const auto& x : xs) {
    if (x.rows() != xs.front().rows() || x.cols() != xs.front().cols()) {
      throw Error(ErrorKind::ShapeError, "operands must share one shape");
    }
  }
}

void require_window(bool inside, std::string_view family, double p) {
  if (!inside) {
    throw Error(ErrorKind::Skipped,
                std::string(family) + " is not stated at p = " + std::to_string(p));
  }
}

void require_p_positive(double p) { Exponent{p}; }

Bound flip(Bound b) { return b == Bound::upper ? Bound::lower : Bound::upper; }

// Cases for a two-sided chain left <= middle <= right (above the pivot);
// below the pivot both links reverse.
void push_chain(std::vector<InequalityCase>& out, std::string_view family, double p,
                double left, double middle, double right) {
  for (const Bound b : bounds_around(p, 2.0, Bound::upper)) {
    out.push_back(make_case(std::string(family), "left", p, b, Status::theorem, left, middle));
    out.push_back(make_case(std::string(family), "right", p, b, Status::theorem, middle, right));
  }
}

void push_cases(std::vector<InequalityCase>& out, std::string_view family, std::string branch,
                double p, const std::vector<Bound>& bounds, Status status, double lhs,
                double rhs) {
  for (const Bound b : bounds) {
    out.push_back(make_case(std::string(family), branch, p, b, status, lhs, rhs));
  }
}

bool is_psd(const Matrix& h, double tol = 1e-10) {
  if (!is_hermitian(h)) return false;
  const RealVector ev = hermitian_eigenvalues(h);
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  return ev.minCoeff() >= -tol * scale;
}

Matrix sum_of(std::span<const Matrix> xs) {
  Matrix s = Matrix::Zero(xs.front().rows(), xs.front().cols());
  for (const auto& x : xs) s += x;
  return s;
}

// Eigenvalues of a PSD matrix, ascending, with roundoff negatives set to 0.
RealVector clamped_eigenvalues(const Matrix& h) {
  RealVector ev = hermitian_eigenvalues((h + h.adjoint()) * 0.5);
  for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = std::max(ev(i), 0.0);
  return ev;
}

// Ascending eigenvalues of |x|^p from the singular values.
RealVector abs_power_eigenvalues(const Matrix& x, double p) {
  const Eigen::Index m = x.cols();
  const RealVector s = singular_values(x);
  RealVector ev = RealVector::Zero(m);
  for (Eigen::Index i = 0; i < s.size(); ++i) ev(m - 1 - i) = s(i) > 0.0 ? std::pow(s(i), p) : 0.0;
  std::sort(ev.data(), ev.data() + m);
  return ev;
}

double partial_sum(const RealVector& ascending, int k) {
  return ascending.head(k).sum();
}

double geometric_mean(const RealVector& ascending, int k) {
  double log_sum = 0.0;
  for (int j = 0; j < k; ++j) {
    if (ascending(j) <= 0.0) return 0.0;
    log_sum += std::log(ascending(j));
  }
  return std::exp(log_sum / k);
}

}  // namespace

std::string_view to_string(Bound b) { return b == Bound::upper ? "upper" : "lower"; }

std::string_view to_string(Status s) {
  switch (s) {
    case Status::theorem: return "theorem";
    case Status::conjecture: return "conjecture";
    case Status::conditional: return "conditional";
  }
  return "theorem";
}

InequalityCase make_case(std::string family, std::string branch, double p, Bound bound,
                         Status status, double lhs, double rhs) {
  InequalityCase c;
  c.family = std::move(family);
  c.branch = std::move(branch);
  c.p = p;
  c.bound = bound;
  c.status = status;
  c.lhs = lhs;
  c.rhs = rhs;
  c.margin = bound == Bound::upper ? rhs - lhs : lhs - rhs;
  c.rel_margin = c.margin / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
  return c;
}

std::vector<Bound> bounds_around(double p, double pivot, Bound above) {
  if (std::abs(p - pivot) <= kPivotTol) return {above, flip(above)};
  return {p > pivot ? above : flip(above)};
}

std::vector<InequalityCase> eval_pair(std::string_view family, double p, const Matrix& a,
                                      const Matrix& b, bool psd_order) {
  require_p_positive(p);
  const Matrix pair[] = {a, b};
  require_same_shape(pair);
  std::vector<InequalityCase> out;
  const auto theorem = Status::theorem;

  if (family == "CM_P") {
    const double lhs = power_sum(a + b, p) + power_sum(a - b, p);
    const double rhs = std::pow(2.0, p - 1.0) * (power_sum(a, p) + power_sum(b, p));
    push_cases(out, family, "", p, bounds_around(p, 2.0, Bound::upper), theorem, lhs, rhs);
  } else if (family == "CM_Q") {
    require_window(p > 1.0, family, p);
    const double q = Exponent(p).conjugate();
    const double lhs = std::pow(norm_p(a + b, p), q) + std::pow(norm_p(a - b, p), q);
    const double rhs = 2.0 * std::pow(power_sum(a, p) + power_sum(b, p), q / p);
    push_cases(out, family, "", p, bounds_around(p, 2.0, Bound::lower), theorem, lhs, rhs);
  } else if (family == "BCL") {
    require_window(p >= 1.0, family, p);
    const double s = power_sum(a + b, p) + power_sum(a - b, p);
    const double na = norm_p(a, p);
    const double nb = norm_p(b, p);
    const double lhs = std::pow(s / 2.0, 2.0 / p);
    const double rhs = na * na + (p - 1.0) * nb * nb;
    push_cases(out, family, "", p, bounds_around(p, 2.0, Bound::upper), theorem, lhs, rhs);
  } else if (family == "BCL_LOWER") {
    const double na = norm_p(a, p);
    const double nb = norm_p(b, p);
    const double lhs = std::pow(2.0, 2.0 - p / 2.0) * std::pow(na * na + nb * nb, p / 2.0);
    const double rhs = power_sum(a + b, p) + power_sum(a - b, p);
    push_cases(out, family, "", p, bounds_around(p, 2.0, Bound::upper), theorem, lhs, rhs);
  } else if (family == "BK_SQ") {
    const double na = norm_p(a, p);
    const double nb = norm_p(b, p);
    const double np = norm_p(a + b, p);
    const double nm = norm_p(a - b, p);
    const double lhs = std::pow(2.0, 2.0 / p) * (na * na + nb * nb);
    const double rhs = np * np + nm * nm;
    push_cases(out, family, "", p, bounds_around(p, 2.0, Bound::upper), theorem, lhs, rhs);
  } else if (family == "HANNER") {
    require_window(p >= 1.0, family, p);
    const double na = norm_p(a, p);
    const double nb = norm_p(b, p);
    const double lhs = power_sum(a + b, p) + power_sum(a - b, p);
    const double rhs = std::pow(na + nb, p) + std::pow(std::abs(na - nb), p);
    const bool generic = p <= 4.0 / 3.0 + kPivotTol || p >= 4.0 - kPivotTol;
    if (psd_order) {
      if (!is_psd(a + b) || !is_psd(a - b)) {
        throw Error(ErrorKind::Skipped, "HANNER order branch needs A + B and A - B PSD");
      }
      push_cases(out, family, "psd_order", p, bounds_around(p, 2.0, Bound::upper), theorem,
                 lhs, rhs);
    } else {
      require_window(generic, family, p);
    }
    if (generic) {
      const Bound bound = p >= 4.0 - kPivotTol ? Bound::upper : Bound::lower;
      push_cases(out, family, "generic", p, {bound}, theorem, lhs, rhs);
    }
  } else if (family == "ABS_CM" || family == "ABS_HANNER") {
    const Matrix aa = abs_power(a, 1.0);
    const Matrix ab = abs_power(b, 1.0);
    const double s = power_sum(a + b, p) + power_sum(a - b, p);
    const double s_abs = power_sum(aa + ab, p) + power_sum(aa - ab, p);
    if (family == "ABS_CM") {
      push_chain(out, family, p, std::pow(2.0, 1.0 - p / 2.0) * s_abs, s,
                 std::pow(2.0, p / 2.0 - 1.0) * s_abs);
    } else {
      require_window(p >= 1.0, family, p);
      const double na = norm_p(a, p);
      const double nb = norm_p(b, p);
      const double hanner = std::pow(na + nb, p) + std::pow(std::abs(na - nb), p);
      push_cases(out, family, "combined", p, bounds_around(p, 2.0, Bound::upper),
                 Status::conditional, s, std::pow(2.0, p / 2.0 - 1.0) * s_abs);
      push_cases(out, family, "positive_hanner", p, bounds_around(p, 2.0, Bound::upper),
                 Status::conditional, s_abs, hanner);
    }
  } else {
    throw Error(ErrorKind::UnknownFamily, "eval_pair has no family " + std::string(family));
  }
  return out;
}

std::vector<Matrix> root_combinations(std::span<const Matrix> a) {
  require_same_shape(a);
  const auto n = static_cast<int>(a.size());
  std::vector<Matrix> c;
  c.reserve(a.size());
  for (int k = 0; k < n; ++k) {
    Matrix ck = Matrix::Zero(a.front().rows(), a.front().cols());
    for (int j = 0; j < n; ++j) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / n;
      ck += std::polar(1.0, angle) * a[static_cast<std::size_t>(j)];
    }
    c.push_back(std::move(ck));
  }
  return c;
}

std::vector<InequalityCase> eval_roots(std::string_view family, double p,
                                       std::span<const Matrix> a) {
  require_p_positive(p);
  require_same_shape(a);
  const double n = static_cast<double>(a.size());
  const auto c = root_combinations(a);
  std::vector<InequalityCase> out;
  if (family == "BK_P") {
    push_cases(out, family, "", p, bounds_around(p, 2.0, Bound::upper), Status::theorem,
               power_sum(c, p), std::pow(n, p - 1.0) * power_sum(a, p));
  } else if (family == "BK_Q") {
    require_window(p > 1.0, family, p);
    const double q = Exponent(p).conjugate();
    push_cases(out, family, "", p, bounds_around(p, 2.0, Bound::lower), Status::theorem,
               norm_sum(c, p, q), n * std::pow(power_sum(a, p), q / p));
  } else if (family == "TABLE4_1") {
    const double sa = power_sum(a, p);
    push_chain(out, family, p, n * sa, power_sum(c, p), std::pow(n, p - 1.0) * sa);
  } else if (family == "ROOTS_GRAM") {
    const Matrix gram = sum_of_squares(a);
    const RealVector ev = clamped_eigenvalues(gram);
    double tr = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) tr += ev(i) > 0.0 ? std::pow(ev(i), p / 2.0) : 0.0;
    push_cases(out, family, "", p, bounds_around(p, 2.0, Bound::upper), Status::theorem,
               power_sum(c, p), std::pow(n, p / 2.0) * tr);
  } else {
    throw Error(ErrorKind::UnknownFamily, "eval_roots has no family " + std::string(family));
  }
  return out;
}

std::vector<InequalityCase> eval_pairwise(std::string_view family, double p,
                                          std::span<const Matrix> a) {
  require_p_positive(p);
  require_same_shape(a);
  const std::size_t n = a.size();
  const double nd = static_cast<double>(n);
  std::vector<Matrix> terms;
  terms.push_back(sum_of(a));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) terms.push_back(a[i] - a[j]);
  }
  std::vector<InequalityCase> out;
  if (family == "HK_P") {
    push_cases(out, family, "", p, bounds_around(p, 2.0, Bound::upper), Status::theorem,
               power_sum(terms, p), std::pow(nd, p - 1.0) * power_sum(a, p));
  } else if (family == "HK_Q") {
    require_window(p > 1.0, family, p);
    const double q = Exponent(p).conjugate();
    push_cases(out, family, "", p, bounds_around(p, 2.0, Bound::lower), Status::theorem,
               norm_sum(terms, p, q), nd * std::pow(power_sum(a, p), q / p));
  } else if (family == "TABLE4_3") {
    const double sa = power_sum(a, p);
    const double pairs = nd * (nd - 1.0) / 2.0 + 1.0;
    push_chain(out, family, p, std::pow(nd, p / 2.0) * std::pow(pairs, 1.0 - p / 2.0) * sa,
               power_sum(terms, p), std::pow(nd, p - 1.0) * sa);
  } else {
    throw Error(ErrorKind::UnknownFamily, "eval_pairwise has no family " + std::string(family));
  }
  return out;
}

std::vector<InequalityCase> eval_littlewood(std::string_view family, int level, double p,
                                            std::span<const Matrix> a) {
  require_p_positive(p);
  require_same_shape(a);
  const Matrix l = littlewood(level);
  if (static_cast<Eigen::Index>(a.size()) != l.cols()) {
    throw Error(ErrorKind::ShapeError, "Littlewood level needs 2^level operands");
  }
  const auto c = apply_coefficients(l, a);
  const double two_n = std::pow(2.0, level);
  std::vector<InequalityCase> out;
  if (family == "KE_P") {
    push_cases(out, family, "", p, bounds_around(p, 2.0, Bound::upper), Status::theorem,
               power_sum(c, p), std::pow(2.0, level * (p - 1.0)) * power_sum(a, p));
  } else if (family == "KE_Q") {
    require_window(p > 1.0, family, p);
    const double q = Exponent(p).conjugate();
    push_cases(out, family, "", p, bounds_around(p, 2.0, Bound::lower), Status::theorem,
               norm_sum(c, p, q), two_n * std::pow(power_sum(a, p), q / p));
  } else if (family == "TABLE4_2") {
    const double sa = power_sum(a, p);
    push_chain(out, family, p, two_n * sa, power_sum(c, p),
               std::pow(2.0, level * (p - 1.0)) * sa);
  } else {
    throw Error(ErrorKind::UnknownFamily, "eval_littlewood has no family " + std::string(family));
  }
  return out;
}

std::vector<InequalityCase> eval_table4(int label, double p, std::span<const Matrix> a,
                                        std::span<const Matrix> b) {
  require_p_positive(p);
  require_same_shape(a);
  const std::size_t n = a.size();
  const double nd = static_cast<double>(n);
  const double sa = power_sum(a, p);
  const Matrix total = sum_of(a);
  std::vector<InequalityCase> out;
  const std::string family = "TABLE4_" + std::to_string(label);
  switch (label) {
    case 4: {
      if (b.size() != n) throw Error(ErrorKind::ShapeError, "TABLE4_4 needs two tuples of length n");
      require_same_shape(b);
      if (b.front().rows() != a.front().rows() || b.front().cols() != a.front().cols()) {
        throw Error(ErrorKind::ShapeError, "TABLE4_4 tuples must share one shape");
      }
      double middle = power_sum(total - sum_of(b), p);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          middle += power_sum(a[i] - a[j], p) + power_sum(b[i] - b[j], p);
        }
      }
      double cross = 0.0;
      for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t s = 0; s < n; ++s) cross += power_sum(a[l] - b[s], p);
      }
      push_chain(out, family, p, std::pow(nd * (nd - 1.0) + 1.0, 1.0 - p / 2.0) * cross, middle,
                 std::pow(nd, p - 2.0) * cross);
      break;
    }
    case 5: {
      const double half = (nd + 1.0) / 2.0;
      double middle = power_sum(total, p);
      for (const auto& x : a) middle += power_sum(total - half * x, p);
      push_chain(out, family, p, std::pow(nd + 1.0, p / 2.0 + 1.0) / std::pow(2.0, p) * sa,
                 middle, std::pow(nd, p / 2.0 - 1.0) * std::pow(half, p) * sa);
      break;
    }
    case 6: {
      const Matrix mean = total / nd;
      double middle = power_sum(total / std::sqrt(nd), p);
      for (const auto& x : a) middle += power_sum(x - mean, p);
      push_chain(out, family, p, std::pow(nd + 1.0, 1.0 - p / 2.0) * sa, middle,
                 std::pow(nd, p / 2.0 - 1.0) * sa);
      break;
    }
    case 7: {
      const auto signed_sums = apply_coefficients(sign_matrix(static_cast<int>(n)), a);
      const double two_n = std::pow(2.0, nd);
      push_chain(out, family, p, two_n * sa, power_sum(signed_sums, p),
                 std::pow(nd, p / 2.0 - 1.0) * std::pow(two_n, p / 2.0) * sa);
      break;
    }
    default:
      throw Error(ErrorKind::BadLabel, "eval_table4 label " + std::to_string(label));
  }
  return out;
}

std::vector<InequalityCase> eval_roots_pair(std::string_view family, int n_roots, double p,
                                            const Matrix& a, const Matrix& b) {
  require_p_positive(p);
  if (n_roots < 2) throw Error(ErrorKind::BadDimension, "EE families need n >= 2");
  const Matrix pair[] = {a, b};
  require_same_shape(pair);
  std::vector<Matrix> c;
  for (int k = 0; k < n_roots; ++k) {
    c.push_back(a + std::polar(1.0, 2.0 * std::numbers::pi * k / n_roots) * b);
  }
  const double n = n_roots;
  const double sab = power_sum(a, p) + power_sum(b, p);
  std::vector<InequalityCase> out;
  if (family == "EE_P") {
    push_cases(out, family, "", p, bounds_around(p, 2.0, Bound::upper), Status::theorem,
               power_sum(c, p), std::pow(n, p / 2.0) * std::pow(2.0, p / 2.0 - 1.0) * sab);
  } else if (family == "EE_Q") {
    require_window(p > 1.0, family, p);
    const double q = Exponent(p).conjugate();
    push_cases(out, family, "", p, bounds_around(p, 2.0, Bound::lower), Status::theorem,
               norm_sum(c, p, q), n * std::pow(sab, q / p));
  } else {
    throw Error(ErrorKind::UnknownFamily, "eval_roots_pair has no family " + std::string(family));
  }
  return out;
}

std::vector<InequalityCase> eval_sum_of_squares_trace(const IdentityScheme& scheme, double p,
                                                      std::span<const Matrix> z) {
  require_p_positive(p);
  const double gram_scale = std::max(1.0, max_abs(scheme.right.adjoint() * scheme.right));
  if (scheme.gram_residual() > 1e-10 * gram_scale) {
    throw Error(ErrorKind::GramViolation, "scheme fails L*L = R*R");
  }
  const auto x = apply_coefficients(scheme.left, z);
  const auto y = apply_coefficients(scheme.right, z);
  const double s = static_cast<double>(x.size());
  const double t = static_cast<double>(y.size());
  const double sy = power_sum(y, p);
  std::vector<InequalityCase> out;
  push_chain(out, "SOS_TRACE", p, std::pow(s, 1.0 - p / 2.0) * sy, power_sum(x, p),
             std::pow(t, p / 2.0 - 1.0) * sy);
  return out;
}

std::vector<InequalityCase> eval_subunitary_q(const Subunitary& u, double p,
                                              std::span<const Matrix> y) {
  const double q = Exponent(p).conjugate();
  const double constant = std::pow(u.max_abs_entry(), q / p - 1.0);
  const double rhs = constant * std::pow(power_sum(y, p), q / p);
  std::vector<InequalityCase> out;
  for (const Bound b : bounds_around(p, 2.0, Bound::lower)) {
    const bool forward = b == Bound::upper;
    const auto x = forward ? apply_scheme(u, y) : apply_coefficients(u.matrix().conjugate(), y);
    out.push_back(make_case("SUBUNITARY_Q", forward ? "forward" : "reverse", p, b,
                            Status::theorem, norm_sum(x, p, q), rhs));
  }
  return out;
}

std::vector<InequalityCase> eval_table5_row(int label, int n, double p,
                                            std::span<const Matrix> y) {
  const Table5Entry entry = table5_subunitary(label, n);
  const double q = Exponent(p).conjugate();
  const double printed = table5_printed_constant(label, n, p);
  const double sy = std::pow(power_sum(y, p), q / p);
  std::vector<InequalityCase> out;
  for (auto c : eval_subunitary_q(entry.u, p, y)) {
    const Bound b = c.bound;
    const double lhs = std::pow(entry.scale, q) * c.lhs;
    c.family = "TABLE5_ROW";
    c.branch = "generic_" + c.branch;
    out.push_back(std::move(c));
    out.push_back(make_case("TABLE5_ROW", b == Bound::upper ? "printed_forward" : "printed_reverse",
                            p, b, Status::theorem, lhs, printed * sy));
  }
  return out;
}

std::vector<InequalityCase> eval_antinorm(double p, int k, std::span<const Matrix> x,
                                          std::span<const Matrix> y) {
  require_p_positive(p);
  require_window(p >= 2.0 - kPivotTol, "ANTINORM", p);
  require_same_shape(x);
  require_same_shape(y);
  const Eigen::Index m = x.front().cols();
  if (y.front().cols() != m) throw Error(ErrorKind::ShapeError, "tuples need equal column counts");
  if (k < 1 || k > m) throw Error(ErrorKind::BadK, "k must lie in 1.." + std::to_string(m));
  const Matrix gx = sum_of_squares(x);
  const Matrix gy = sum_of_squares(y);
  if (max_abs(gx - gy) > 1e-8 * std::max(1.0, max_abs(gy))) {
    throw Error(ErrorKind::GramViolation, "sum |x_i|^2 differs from sum |y_j|^2");
  }
  const double s = static_cast<double>(x.size());
  const double t = static_cast<double>(y.size());

  auto sum_abs_power = [&](std::span<const Matrix> xs) {
    Matrix h = Matrix::Zero(m, m);
    for (const auto& v : xs) h += abs_power(v, p);
    return clamped_eigenvalues(h);
  };
  const RealVector ex = sum_abs_power(x);
  const RealVector ey = sum_abs_power(y);
  double x_sum = 0.0, x_prod = 0.0, y_sum = 0.0, y_prod = 0.0;
  for (const auto& v : x) {
    const RealVector ev = abs_power_eigenvalues(v, p);
    x_sum += partial_sum(ev, k);
    x_prod += geometric_mean(ev, k);
  }
  for (const auto& v : y) {
    const RealVector ev = abs_power_eigenvalues(v, p);
    y_sum += partial_sum(ev, k);
    y_prod += geometric_mean(ev, k);
  }
  const double ct = std::pow(t, 1.0 - p / 2.0);
  const double cs = std::pow(s, 1.0 - p / 2.0);
  std::vector<InequalityCase> out;
  out.push_back(make_case("ANTINORM", "sum_y", p, Bound::lower, Status::theorem,
                          partial_sum(ey, k), ct * x_sum));
  out.push_back(make_case("ANTINORM", "sum_x", p, Bound::lower, Status::theorem,
                          partial_sum(ex, k), cs * y_sum));
  out.push_back(make_case("ANTINORM", "product_y", p, Bound::lower, Status::theorem,
                          geometric_mean(ey, k), ct * x_prod));
  out.push_back(make_case("ANTINORM", "product_x", p, Bound::lower, Status::theorem,
                          geometric_mean(ex, k), cs * y_prod));
  return out;
}

InequalityCase eval_directsum_eig(double p, int j, std::span<const Matrix> a) {
  require_p_positive(p);
  require_window(p >= 2.0 - kPivotTol, "DIRECTSUM_EIG", p);
  require_same_shape(a);
  const Eigen::Index m = a.front().rows();
  if (a.front().cols() != m) throw Error(ErrorKind::ShapeError, "DIRECTSUM_EIG needs square blocks");
  const auto n = static_cast<Eigen::Index>(a.size());
  if (j < 0 || n * j + 1 > n * m || j + 1 > m) {
    throw Error(ErrorKind::BadIndex, "index j = " + std::to_string(j) + " out of range");
  }
  std::vector<double> left;
  for (const auto& c : root_combinations(a)) {
    const RealVector s = singular_values(c / static_cast<double>(n));
    for (Eigen::Index i = 0; i < s.size(); ++i) left.push_back(s(i) > 0.0 ? std::pow(s(i), p) : 0.0);
  }
  std::sort(left.begin(), left.end(), std::greater<>());
  Matrix h = Matrix::Zero(m, m);
  for (const auto& x : a) h += abs_power(x, p);
  const RealVector right = clamped_eigenvalues(h / static_cast<double>(n));
  return make_case("DIRECTSUM_EIG", "", p, Bound::upper, Status::theorem,
                   left[static_cast<std::size_t>(n * j)], right(m - 1 - j));
}

std::vector<InequalityCase> eval_king(double p, const Matrix& x, const Matrix& y,
                                      const Matrix& z, const Matrix& w) {
  require_p_positive(p);
  require_window(p >= 1.0, "KING", p);
  if (y.rows() != x.rows() || w.cols() != x.cols() || z.rows() != w.rows() ||
      z.cols() != y.cols()) {
    throw Error(ErrorKind::ShapeError, "KING blocks are not conformable");
  }
  Matrix m(x.rows() + w.rows(), x.cols() + y.cols());
  m << x, y, w, z;
  const double nx = norm_p(x, p);
  const double nz = norm_p(z, p);
  const double gamma = std::pow((power_sum(y, p) + power_sum(w, p)) / 2.0, 1.0 / p);
  const double tr = nx + nz;
  const double tr_sq = nx * nx + nz * nz + 2.0 * gamma * gamma;
  const double inner = (p - 1.0) / 2.0 * tr_sq + (2.0 - p) / 4.0 * tr * tr;
  const double rhs = std::pow(2.0, 1.0 / p) * std::sqrt(std::max(inner, 0.0));
  std::vector<InequalityCase> out;
  push_cases(out, "KING", "", p, bounds_around(p, 2.0, Bound::upper), Status::theorem,
             norm_p(m, p), rhs);
  return out;
}

std::vector<InequalityCase> eval_king_psd(double p, const Matrix& m) {
  require_p_positive(p);
  require_window(p >= 1.0, "KING_PSD", p);
  if (m.rows() != m.cols() || m.rows() % 2 != 0) {
    throw Error(ErrorKind::ShapeError, "KING_PSD needs a square matrix of even side");
  }
  if (!is_psd(m)) throw Error(ErrorKind::NotPSD, "KING_PSD operand is not PSD");
  const Eigen::Index n = m.rows() / 2;
  const double a = norm_p(m.topLeftCorner(n, n), p);
  const double b = norm_p(m.topRightCorner(n, n), p);
  const double c = norm_p(m.bottomRightCorner(n, n), p);
  const double disc = std::sqrt((a - c) * (a - c) + 4.0 * b * b);
  const double l1 = (a + c + disc) / 2.0;
  const double l2 = std::abs((a + c - disc) / 2.0);
  const double compressed = std::pow(std::pow(l1, p) + std::pow(l2, p), 1.0 / p);
  std::vector<InequalityCase> out;
  push_cases(out, "KING_PSD", "", p, bounds_around(p, 2.0, Bound::upper), Status::theorem,
             norm_p(m, p), compressed);
  return out;
}

InequalityCase eval_trace_dual(const Subunitary& u, double p, std::span<const Matrix> y,
                               std::span<const Matrix> z) {
  const double q = Exponent(p).conjugate();
  require_window(p <= 2.0 + kPivotTol, "TRACE_DUAL", p);
  const auto x = apply_scheme(u, y);
  if (z.size() != x.size()) throw Error(ErrorKind::ShapeError, "TRACE_DUAL needs one Z per X");
  Complex tr = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (z[k].cols() != x[k].rows() || z[k].rows() != x[k].cols()) {
      throw Error(ErrorKind::ShapeError, "Z_k X_k is not a square product");
    }
    tr += (z[k] * x[k]).trace();
  }
  double zsum = 0.0;
  for (const auto& zk : z) zsum += std::pow(norm_p(zk, q), p);
  const double rhs = std::pow(u.max_abs_entry(), 1.0 / p - 1.0 / q) *
                     std::pow(power_sum(y, p), 1.0 / p) * std::pow(zsum, 1.0 / p);
  return make_case("TRACE_DUAL", "", p, Bound::upper, Status::theorem, std::abs(tr), rhs);
}

Matrix norm_compression(std::span<const Matrix> top, std::span<const Matrix> bottom, double p) {
  if (top.size() != bottom.size() || top.empty()) {
    throw Error(ErrorKind::ShapeError, "compression needs two block rows of equal length");
  }
  Matrix c(2, static_cast<Eigen::Index>(top.size()));
  for (std::size_t i = 0; i < top.size(); ++i) {
    c(0, static_cast<Eigen::Index>(i)) = norm_p(top[i], p);
    c(1, static_cast<Eigen::Index>(i)) = norm_p(bottom[i], p);
  }
  return c;
}

std::vector<InequalityCase> eval_conjecture(std::string_view name, double p,
                                            std::span<const Matrix> operands) {
  require_p_positive(p);
  require_same_shape(operands);
  std::vector<InequalityCase> out;
  const auto status = Status::conjecture;
  if (name == "CONJ_5_2") {
    if (operands.size() != 2) throw Error(ErrorKind::ShapeError, "CONJ_5_2 takes two operands");
    const Matrix& a = operands[0];
    const Matrix& b = operands[1];
    const double na = norm_p(a, p);
    const double nb = norm_p(b, p);
    push_cases(out, name, "", p, bounds_around(p, 2.0, Bound::upper), status,
               2.0 * std::pow(na * na + nb * nb, p / 2.0),
               power_sum(a + b, p) + power_sum(a - b, p));
  } else if (name == "CONJ_5_3" || name == "CONJ_5_4") {
    const double n = static_cast<double>(operands.size());
    const double sq = norm_sum(operands, p, 2.0);
    const double constant = name == "CONJ_5_3" ? n : std::pow(n, 2.0 - p / 2.0);
    push_cases(out, name, "", p, bounds_around(p, 2.0, Bound::upper), status,
               constant * std::pow(sq, p / 2.0), power_sum(root_combinations(operands), p));
  } else if (name == "AK_COMPRESSION") {
    require_window(p >= 1.0, name, p);
    if (operands.size() % 2 != 0) {
      throw Error(ErrorKind::ShapeError, "AK_COMPRESSION takes A_1..A_N, B_1..B_N");
    }
    const std::size_t big_n = operands.size() / 2;
    const auto top = operands.first(big_n);
    const auto bottom = operands.subspan(big_n);
    const Eigen::Index r = top.front().rows();
    const Eigen::Index c = top.front().cols();
    Matrix t(2 * r, static_cast<Eigen::Index>(big_n) * c);
    for (std::size_t i = 0; i < big_n; ++i) {
      t.block(0, static_cast<Eigen::Index>(i) * c, r, c) = top[i];
      t.block(r, static_cast<Eigen::Index>(i) * c, r, c) = bottom[i];
    }
    push_cases(out, name, "", p, bounds_around(p, 2.0, Bound::upper), status, norm_p(t, p),
               norm_p(norm_compression(top, bottom, p), p));
  } else {
    throw Error(ErrorKind::UnknownFamily, "no conjecture named " + std::string(name));
  }
  return out;
}

}  // namespace cmtk
