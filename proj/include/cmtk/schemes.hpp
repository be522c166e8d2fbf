#pragma once

// Structured coefficient matrices: Fourier, Littlewood (Walsh) and sign
// matrices, the subunitary matrices of the Clarkson-McCarthy rows, and the
// two-sided sum-of-squares identity schemes built from them.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cmtk/numerics.hpp"
#include "cmtk/rng.hpp"

namespace cmtk {

inline constexpr double kSubunitaryTol = 1e-10;

/// s x t matrix (s >= t) with orthonormal columns, U*U = I_t.
class Subunitary {
 public:
  /// Throws ShapeError when rows < cols, NotSubunitary when the column Gram
  /// deviates from the identity by more than tol.
  static Subunitary checked(Matrix u, double tol = kSubunitaryTol);

  const Matrix& matrix() const noexcept { return u_; }
  Eigen::Index rows() const noexcept { return u_.rows(); }
  Eigen::Index cols() const noexcept { return u_.cols(); }
  double max_abs_entry() const { return max_abs(u_); }

 private:
  explicit Subunitary(Matrix u) : u_(std::move(u)) {}
  Matrix u_;
};

struct SubunitaryCheck {
  bool ok;
  double residual;  // max |u*u - I|
};

SubunitaryCheck is_subunitary(const Matrix& u, double tol);

/// X = L z, Y = R z over base operands z; the identity sum |X_i|^2 = sum |Y_j|^2
/// holds for every z exactly when L*L = R*R.
struct IdentityScheme {
  Matrix left;   // s x d
  Matrix right;  // t x d
  double scale;  // R = scale * I when R is a multiple of the identity, else 1
  int label;
  int n;

  Eigen::Index base_count() const { return left.cols(); }
  double gram_residual() const;  // max |L*L - R*R|
};

struct Table5Entry {
  Subunitary u;
  double scale;  // printed conclusion operators = scale * (U Y)
};

/// (1/sqrt n) [w^{jk}], w = exp(2 pi i / n).
Subunitary fourier_matrix(int n);

/// Sylvester recursion, L_0 = [1].
Matrix littlewood(int level);

/// All 2^n sign rows (-1)^{k_i}, lexicographic in (k_1, ..., k_n).
Matrix sign_matrix(int n);

/// Labels {0,1,2,3,5,6,7}. Label 2 reads n as the Littlewood level; labels
/// 5 and 6 need n >= 3 (their printed constants assume it).
Table5Entry table5_subunitary(int label, int n);

/// The printed Table-5 style constant C with sum ||Z_i||^q <= C (sum ||Y||^p)^{q/p}.
double table5_printed_constant(int label, int n, double p);

/// Labels 0..7. Label 0 ignores n (two operands); label 2 reads n as the
/// Littlewood level; label 4 has base operands (x_1..x_n, y_1..y_n).
IdentityScheme table1_scheme(int label, int n);

/// X_i = sum_j u_ij Y_j.
std::vector<Matrix> apply_coefficients(const Matrix& u, std::span<const Matrix> y);
std::vector<Matrix> apply_scheme(const Subunitary& u, std::span<const Matrix> y);

/// sum_i X_i* X_i.
Matrix sum_of_squares(std::span<const Matrix> x);

/// ||sum |X_i|^2 - sum |Y_j|^2||_max / scale with X = L z, Y = R z.
double verify_identity(const IdentityScheme& scheme, std::span<const Matrix> z);

/// First block row (A_1..A_n), later rows shifted cyclically to the right.
Matrix block_circulant(std::span<const Matrix> a);

enum class EnsembleKind { ginibre, haar_unitary, psd, hermitian, schatten_unit };

struct EnsembleConfig {
  int dim = 2;
  EnsembleKind kind = EnsembleKind::ginibre;
  double p = 2.0;  // schatten_unit only
  std::uint64_t seed = 0;
};

EnsembleKind parse_ensemble_kind(const std::string& name);

Matrix random_matrix(const EnsembleConfig& config);

/// Phase-fixed QR of a square Ginibre sample: Haar distributed unitary.
Matrix haar_from_ginibre(const Matrix& g);

/// First `cols` columns of a Haar unitary grown from g (g must be square).
Matrix haar_columns(const Matrix& g, Eigen::Index cols);

}  // namespace cmtk
