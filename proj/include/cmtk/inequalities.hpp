#pragma once

// Evaluators for the Clarkson-McCarthy type inequality families. Each call
// returns one InequalityCase per applicable direction; lhs and rhs are the
// two sides as printed, and `bound` says which way the inequality points.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cmtk/numerics.hpp"
#include "cmtk/schemes.hpp"

namespace cmtk {

/// upper: lhs <= rhs.  lower: lhs >= rhs.
enum class Bound { upper, lower };
enum class Status { theorem, conjecture, conditional };

std::string_view to_string(Bound b);
std::string_view to_string(Status s);

inline constexpr double kViolationTol = 1e-8;

struct InequalityCase {
  std::string family;
  std::string branch;  // distinguishes several cases of one family ("left", "printed", ...)
  double p = 0.0;
  Bound bound = Bound::upper;
  Status status = Status::theorem;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;      // rhs - lhs for upper, lhs - rhs for lower
  double rel_margin = 0.0;  // margin / max(|lhs|, |rhs|, 1e-300)

  bool violated(double tol = kViolationTol) const { return rel_margin < -tol; }
};

InequalityCase make_case(std::string family, std::string branch, double p, Bound bound,
                         Status status, double lhs, double rhs);

/// The bound that holds above `pivot`, its flip below; both at the pivot.
std::vector<Bound> bounds_around(double p, double pivot, Bound above);

/// CM_P, CM_Q, BCL, BCL_LOWER, BK_SQ, HANNER, ABS_CM, ABS_HANNER.
/// `psd_order` asks HANNER to use its A+B, A-B >= 0 branch, which is verified
/// and reported as Skipped when the claim fails.
std::vector<InequalityCase> eval_pair(std::string_view family, double p, const Matrix& a,
                                      const Matrix& b, bool psd_order = false);

/// C_k = sum_j w^{jk} A_j, w = exp(2 pi i / n), k, j from 0.
std::vector<Matrix> root_combinations(std::span<const Matrix> a);

/// BK_P, BK_Q, TABLE4_1, ROOTS_GRAM.
std::vector<InequalityCase> eval_roots(std::string_view family, double p,
                                       std::span<const Matrix> a);

/// HK_P, HK_Q, TABLE4_3.
std::vector<InequalityCase> eval_pairwise(std::string_view family, double p,
                                          std::span<const Matrix> a);

/// KE_P, KE_Q, TABLE4_2 over 2^level operands.
std::vector<InequalityCase> eval_littlewood(std::string_view family, int level, double p,
                                            std::span<const Matrix> a);

/// Labels 4..7. Label 4 reads b as the second tuple; the others ignore it.
std::vector<InequalityCase> eval_table4(int label, double p, std::span<const Matrix> a,
                                        std::span<const Matrix> b = {});

/// EE_P, EE_Q: sum over k < n_roots of A + w^k B.
std::vector<InequalityCase> eval_roots_pair(std::string_view family, int n_roots, double p,
                                            const Matrix& a, const Matrix& b);

/// Trace bounds for X = L z, Y = R z. Throws GramViolation when L*L != R*R.
std::vector<InequalityCase> eval_sum_of_squares_trace(const IdentityScheme& scheme, double p,
                                                      std::span<const Matrix> z);

/// Forward branch (1 < p <= 2, X = U Y) and reverse branch (p >= 2,
/// X = conj(U) Y); both at p = 2.
std::vector<InequalityCase> eval_subunitary_q(const Subunitary& u, double p,
                                              std::span<const Matrix> y);

/// Generic cases for the Table 5 matrix plus the printed row after scaling.
std::vector<InequalityCase> eval_table5_row(int label, int n, double p,
                                            std::span<const Matrix> y);

/// Anti-norm bounds for 1 <= k <= m. Requires sum |x|^2 = sum |y|^2.
std::vector<InequalityCase> eval_antinorm(double p, int k, std::span<const Matrix> x,
                                          std::span<const Matrix> y);

/// j counts from 0: compares the (nj+1)-th and (j+1)-th largest eigenvalues.
InequalityCase eval_directsum_eig(double p, int j, std::span<const Matrix> a);

/// Block matrix [[X, Y], [W, Z]].
std::vector<InequalityCase> eval_king(double p, const Matrix& x, const Matrix& y,
                                      const Matrix& z, const Matrix& w);

/// M = [[X, Y], [Y*, Z]] PSD with square blocks of equal size.
std::vector<InequalityCase> eval_king_psd(double p, const Matrix& m);

/// |Tr sum_k Z_k X_k| with X = U Y.
InequalityCase eval_trace_dual(const Subunitary& u, double p, std::span<const Matrix> y,
                               std::span<const Matrix> z);

/// CONJ_5_2 (A, B), CONJ_5_3 and CONJ_5_4 (A_1..A_n), AK_COMPRESSION
/// (A_1..A_N, B_1..B_N). Conjectures are reported, never asserted.
std::vector<InequalityCase> eval_conjecture(std::string_view name, double p,
                                            std::span<const Matrix> operands);

/// ||T||_p against the 2 x N matrix of block norms.
Matrix norm_compression(std::span<const Matrix> top, std::span<const Matrix> bottom, double p);

}  // namespace cmtk
